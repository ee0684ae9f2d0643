use std::path::PathBuf;

use kpaths_core::limit_series::{simulate_series, SeriesEvaluator};
use kpaths_core::stats::{
    empirical_mixed_moment, empirical_values_at, fourth_moment_count, ks_distance,
    short_sum_moment, sup_norm_tail, theoretical_mixed_moment, IntervalSpec, MomentSpec,
    PairVariant, TailSource, TheoryMethod,
};
use kpaths_core::{
    Complex64, Executor, FamilyKind, FieldContext, Ordering, Param, SatoTateSampler, SeriesConfig,
    SeriesVariant, SumFamily,
};
use serde_json::{json, Value};

use crate::args::{
    CountArg, DistArgs, Format, MethodArg, MomentsArgs, OrderingArg, PathArgs, ShortsumArgs,
    SimulateArgs, SourceArg, SweepArgs, TailsArgs, VariantArg,
};
use crate::error::CliError;
use crate::output::{self, complex_value, num, Meta, Record};

/// Bytes of one output file together with its default name.
#[derive(Debug)]
pub struct Artifact {
    pub name: String,
    pub bytes: Vec<u8>,
}

fn ordering(o: OrderingArg) -> Ordering {
    match o {
        OrderingArg::Natural => Ordering::Natural,
        OrderingArg::Geometric => Ordering::Geometric,
    }
}

fn variant(v: VariantArg) -> SeriesVariant {
    match v {
        VariantArg::Standard => SeriesVariant::Standard,
        VariantArg::ShiftMinusOne => SeriesVariant::ShiftMinusOne,
    }
}

/// The limit series that the family's paths converge to.
fn limit_variant(kind: FamilyKind) -> SeriesVariant {
    match kind {
        FamilyKind::KloostermanShift => SeriesVariant::ShiftMinusOne,
        _ => SeriesVariant::Standard,
    }
}

fn ordering_suffix(o: OrderingArg) -> &'static str {
    match o {
        OrderingArg::Natural => "",
        OrderingArg::Geometric => "-geometric",
    }
}

pub fn path(args: &PathArgs, seed: u64) -> Result<Artifact, CliError> {
    let kind: FamilyKind = args.fam.family.into();
    let p = args.fam.p;
    let ctx = FieldContext::new(p)?;
    let fam = SumFamily::new(
        kind,
        Param {
            alpha: args.alpha,
            a: args.a,
        },
    )
    .with_ordering(ordering(args.ordering));
    let path = fam.partial_sum_vector(&ctx)?;
    let meta = Meta::new("path", seed)
        .with("family", kind)
        .with("p", p)
        .with("a", args.a)
        .with("alpha", args.alpha)
        .with("ordering", format!("{:?}", args.ordering).to_lowercase())
        .with("format", args.format.extension());
    let vertices = path.vertices();
    let segments = path.segments();
    let bytes = match args.format {
        Format::Csv => {
            let ts: Vec<f64> = (0..=segments).map(|i| i as f64 / segments as f64).collect();
            output::path_csv(&meta, &ts, vertices)
        }
        Format::Svg => output::svg(&meta, vertices),
        Format::Json => output::json(&[
            Record::new(
                &meta,
                "complete_sum",
                kind.name(),
                Some(p),
                complex_value(path.endpoint()),
            ),
            Record::new(
                &meta,
                "sup_norm",
                kind.name(),
                Some(p),
                json!(path.sup_norm()),
            ),
        ]),
    };
    let alpha = if kind == FamilyKind::Kloosterman2 {
        format!("-alpha{}", args.alpha)
    } else {
        String::new()
    };
    let name = format!(
        "path-{kind}-p{p}{alpha}-a{}{}.{}",
        args.a,
        ordering_suffix(args.ordering),
        args.format.extension()
    );
    Ok(Artifact { name, bytes })
}

pub fn simulate(args: &SimulateArgs, seed: u64) -> Result<Artifact, CliError> {
    let cfg = SeriesConfig::uniform(args.m, args.grid)?.with_variant(variant(args.variant));
    let mut sampler = SatoTateSampler::with_stream(seed, args.realization);
    let sample = simulate_series(&cfg, &mut sampler);
    let meta = Meta::new("simulate", seed)
        .with("m", args.m)
        .with("grid", args.grid)
        .with("variant", format!("{:?}", args.variant).to_lowercase())
        .with("realization", args.realization)
        .with("format", args.format.extension());
    let bytes = match args.format {
        Format::Csv => output::path_csv(&meta, &sample.ts, &sample.values),
        Format::Svg => output::svg(&meta, &sample.values),
        Format::Json => {
            let end = *sample.values.last().expect("grid has at least two points");
            output::json(&[
                Record::new(&meta, "endpoint", "series", None, complex_value(end)),
                Record::new(&meta, "sup_norm", "series", None, json!(sample.sup_norm())),
            ])
        }
    };
    let suffix = match args.variant {
        VariantArg::Standard => "",
        VariantArg::ShiftMinusOne => "-shift",
    };
    let name = format!(
        "simulate-m{}-grid{}{suffix}-seed{seed}-r{}.{}",
        args.m,
        args.grid,
        args.realization,
        args.format.extension()
    );
    Ok(Artifact { name, bytes })
}

pub fn moments<E: Executor>(exec: &E, args: &MomentsArgs, seed: u64) -> Result<Artifact, CliError> {
    let spec: MomentSpec = args
        .spec
        .parse()
        .map_err(|e| CliError::Usage(format!("invalid --spec {:?}: {e}", args.spec)))?;
    let kind: FamilyKind = args.fam.family.into();
    let p = args.fam.p;
    let ctx = FieldContext::new(p)?;
    let empirical = empirical_mixed_moment(exec, &ctx, kind, &spec)?;
    let lim = limit_variant(kind);
    let (method, mut meta) = match args.method {
        MethodArg::Expansion => (
            TheoryMethod::Expansion {
                cutoff: args.cutoff,
                variant: lim,
            },
            Meta::new("moments", seed)
                .with("method", "expansion")
                .with("cutoff", args.cutoff),
        ),
        MethodArg::MonteCarlo => (
            TheoryMethod::MonteCarlo {
                samples: args.samples,
                m: args.m,
                seed,
                variant: lim,
            },
            Meta::new("moments", seed)
                .with("method", "monte-carlo")
                .with("samples", args.samples)
                .with("m", args.m),
        ),
    };
    meta = meta
        .with("family", kind)
        .with("p", p)
        .with("spec", &args.spec);
    let theory = theoretical_mixed_moment(exec, &spec, method)?;
    let value = json!({
        "empirical": complex_value(empirical),
        "theoretical": complex_value(theory.value),
        "difference": (empirical - theory.value).norm(),
    });
    let record =
        Record::new(&meta, "mixed_moment", kind.name(), Some(p), value).with_error(theory.error);
    let tag: String = args
        .spec
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '.' {
                c
            } else {
                '_'
            }
        })
        .collect();
    let name = format!("moments-{kind}-p{p}-{tag}.json");
    Ok(Artifact {
        name,
        bytes: output::json(&[record]),
    })
}

pub fn dist<E: Executor>(exec: &E, args: &DistArgs, seed: u64) -> Result<Artifact, CliError> {
    let kind: FamilyKind = args.fam.family.into();
    let p = args.fam.p;
    let ctx = FieldContext::new(p)?;
    let emp = empirical_values_at(exec, &ctx, kind, args.t)?;
    let cfg = SeriesConfig::points(args.m, vec![args.t])?.with_variant(limit_variant(kind));
    let sim = simulated_point_values(exec, &cfg, args.samples, seed);
    let meta = Meta::new("dist", seed)
        .with("family", kind)
        .with("p", p)
        .with("t", num(args.t))
        .with("m", args.m)
        .with("samples", args.samples);
    let part = |f: fn(&Complex64) -> f64| -> (Vec<f64>, Vec<f64>) {
        (emp.iter().map(f).collect(), sim.iter().map(f).collect())
    };
    let (er, sr) = part(|z| z.re);
    let (ei, si) = part(|z| z.im);
    let ks_re = ks_distance(&er, &sr)?;
    let ks_im = ks_distance(&ei, &si)?;
    let records = [
        Record::new(&meta, "ks_re", kind.name(), Some(p), json!(ks_re)),
        Record::new(&meta, "ks_im", kind.name(), Some(p), json!(ks_im)),
    ];
    let name = format!(
        "dist-{kind}-p{p}-t{}-m{}-seed{seed}.json",
        num(args.t),
        args.m
    );
    Ok(Artifact {
        name,
        bytes: output::json(&records),
    })
}

/// `K_m(t)` of realizations `0..samples`, realization `r` on stream `r`.
fn simulated_point_values<E: Executor>(
    exec: &E,
    cfg: &SeriesConfig,
    samples: usize,
    seed: u64,
) -> Vec<Complex64> {
    let eval = SeriesEvaluator::new(cfg);
    exec.map_indexed(samples, |r| {
        let mut sampler = SatoTateSampler::with_stream(seed, r as u64);
        eval.simulate(&mut sampler).values[0]
    })
}

pub fn tails<E: Executor>(exec: &E, args: &TailsArgs, seed: u64) -> Result<Artifact, CliError> {
    let kind: FamilyKind = args.family.into();
    let mut meta = Meta::new("tails", seed)
        .with("format", args.format.extension())
        .with(
            "thresholds",
            args.thresholds
                .iter()
                .map(|&a| num(a))
                .collect::<Vec<_>>()
                .join(","),
        );
    let (estimate, family, p, name) = match args.source {
        SourceArg::Empirical => {
            let p = args
                .p
                .ok_or_else(|| CliError::Usage("--p is required with --source empirical".into()))?;
            let ctx = FieldContext::new(p)?;
            meta = meta
                .with("source", "empirical")
                .with("family", kind)
                .with("p", p);
            let est = sup_norm_tail(
                exec,
                &TailSource::Empirical { ctx: &ctx, kind },
                &args.thresholds,
            )?;
            (
                est,
                kind.name().to_string(),
                Some(p),
                format!("tails-{kind}-p{p}"),
            )
        }
        SourceArg::Simulated => {
            let cfg = SeriesConfig::uniform(args.m, args.grid)?;
            meta = meta
                .with("source", "simulated")
                .with("m", args.m)
                .with("grid", args.grid)
                .with("samples", args.samples);
            let src = TailSource::Simulated {
                cfg: &cfg,
                samples: args.samples,
                seed,
            };
            let est = sup_norm_tail(exec, &src, &args.thresholds)?;
            let name = format!(
                "tails-series-m{}-grid{}-n{}-seed{seed}",
                args.m, args.grid, args.samples
            );
            (est, "series".to_string(), None, name)
        }
    };
    let bytes = match args.format {
        Format::Csv => {
            let rows = estimate
                .thresholds
                .iter()
                .zip(&estimate.probabilities)
                .map(|(a, pr)| [num(*a), num(*pr), estimate.samples.to_string()]);
            output::csv(&meta, &["threshold", "probability", "samples"], rows)
        }
        Format::Json => {
            let value = json!({
                "thresholds": estimate.thresholds,
                "probabilities": estimate.probabilities,
                "exceedances": estimate.exceedances,
                "samples": estimate.samples,
            });
            output::json(&[Record::new(&meta, "sup_norm_tail", &family, p, value)])
        }
        Format::Svg => return Err(CliError::Usage("tails are written as csv or json".into())),
    };
    Ok(Artifact {
        name: format!("{name}.{}", args.format.extension()),
        bytes,
    })
}

pub fn shortsum<E: Executor>(
    exec: &E,
    args: &ShortsumArgs,
    seed: u64,
) -> Result<Artifact, CliError> {
    let kind: FamilyKind = args.fam.family.into();
    let p = args.fam.p;
    let ctx = FieldContext::new(p)?;
    let interval = IntervalSpec::new(args.start, args.len);
    let mut meta = Meta::new("shortsum", seed)
        .with("family", kind)
        .with("p", p)
        .with("start", args.start)
        .with("len", args.len)
        .with("exponent", args.exponent);
    if let Some(c) = args.count {
        meta = meta.with("count", format!("{c:?}").to_lowercase());
    }
    let moment = short_sum_moment(exec, &ctx, kind, interval, args.exponent)?;
    let mut records = vec![Record::new(
        &meta,
        "short_sum_moment",
        kind.name(),
        Some(p),
        json!(moment),
    )];
    if let Some(c) = args.count {
        let v = match c {
            CountArg::InversePair => PairVariant::InversePair,
            CountArg::AdditivePair => PairVariant::AdditivePair,
        };
        let n = fourth_moment_count(&ctx, interval, v)?;
        let stat = match c {
            CountArg::InversePair => "inverse_pair_count",
            CountArg::AdditivePair => "additive_pair_count",
        };
        records.push(Record::new(
            &meta,
            stat,
            kind.name(),
            Some(p),
            Value::from(n),
        ));
    }
    let name = format!(
        "shortsum-{kind}-p{p}-s{}-l{}-e{}.json",
        args.start, args.len, args.exponent
    );
    Ok(Artifact {
        name,
        bytes: output::json(&records),
    })
}

pub fn sweep<E: Executor>(exec: &E, args: &SweepArgs, seed: u64) -> Result<Artifact, CliError> {
    let kind: FamilyKind = args.fam.family.into();
    let p = args.fam.p;
    let ctx = FieldContext::new(p)?;
    let ord = ordering(args.ordering);
    let count = kind.parameter_count(ctx.p());
    let rows = exec.map_indexed(count, |idx| {
        let fam = SumFamily::at_index(kind, ctx.p(), idx).with_ordering(ord);
        fam.partial_sum_vector(&ctx)
            .map(|path| (fam.param, path.endpoint(), path.sup_norm()))
    });
    let rows = rows.into_iter().collect::<Result<Vec<_>, _>>()?;
    let meta = Meta::new("sweep", seed)
        .with("family", kind)
        .with("p", p)
        .with("ordering", format!("{:?}", args.ordering).to_lowercase())
        .with("format", args.format.extension());
    let bytes = match args.format {
        Format::Csv => output::csv(
            &meta,
            &["index", "alpha", "a", "re", "im", "sup_norm"],
            rows.iter().enumerate().map(|(i, (prm, z, s))| {
                [
                    i.to_string(),
                    prm.alpha.to_string(),
                    prm.a.to_string(),
                    num(z.re),
                    num(z.im),
                    num(*s),
                ]
            }),
        ),
        Format::Json => {
            let value: Vec<Value> = rows
                .iter()
                .map(|(prm, z, s)| json!({ "alpha": prm.alpha, "a": prm.a, "complete_sum": complex_value(*z), "sup_norm": s }))
                .collect();
            output::json(&[Record::new(
                &meta,
                "sweep",
                kind.name(),
                Some(p),
                Value::Array(value),
            )])
        }
        Format::Svg => return Err(CliError::Usage("sweeps are written as csv or json".into())),
    };
    let name = format!(
        "sweep-{kind}-p{p}{}.{}",
        ordering_suffix(args.ordering),
        args.format.extension()
    );
    Ok(Artifact { name, bytes })
}

/// Where an artifact goes: `--output` if given, otherwise its default name
/// inside the output directory. `None` means standard output.
pub fn destination(
    artifact: &Artifact,
    output: Option<&PathBuf>,
    dir: &std::path::Path,
) -> Option<PathBuf> {
    match output {
        Some(p) if p.as_os_str() == "-" => None,
        Some(p) => Some(p.clone()),
        None => Some(dir.join(&artifact.name)),
    }
}
