//! The check registry: expands the configuration into named check entries,
//! each bound to a checker call over the standard map set.

use pmm_core::checks::{
    check_adjoint_preserving, check_ando_multilinear, check_cdj, check_cdj_at, check_choi_normal,
    check_fiedler_extension, check_info_monotonicity_karcher, check_info_monotonicity_power,
    check_kantorovich, check_mean_symmetrization, check_monotone, check_multilinearity,
    check_positivity, check_power_family, check_power_monotonicity, check_reverse_ando,
    check_reverse_cdj, check_reverse_mean_additivity, check_reverse_symmetrization,
    check_schwarz_multilinear, check_unital, convexity_profile_sampled, russo_dye_check,
    CheckResult, Direction, KantorovichVariant, SchwarzVariant,
};
use pmm_core::multilinear::choi_compression;
use pmm_core::random::haar_unitary;
use pmm_core::{
    HermitianMatrix, Interval, MapDescriptor, MeanDescriptor, Result, RngStream, ScalarFunction,
};

use crate::config::SuiteConfig;

pub type RunFn = Box<dyn Fn(&SuiteConfig) -> Result<CheckResult> + Send + Sync>;

/// One runnable entry of the suite.
pub struct CheckSpec {
    /// Unique entry name, `family/map[/variant]`.
    pub name: String,
    /// Filter key used by `--checks`.
    pub family: &'static str,
    /// Catalog entries are expected to fail.
    pub expected_violation: bool,
    /// Catalog bound: the raw margin must be at or below this value.
    pub required_margin_raw_max: Option<f64>,
    pub run: RunFn,
}

/// Per-entry seed: a named substream of the master seed, so entries are
/// decoupled and reordering the registry does not change any entry's draw.
pub fn entry_seed(master: u64, name: &str) -> u64 {
    RngStream::from_seed(master).substream_named(name).seed()
}

/// The standard map set the suite exercises where applicable: tensor,
/// Hadamard, the normalized trace pair, one congruence-transformed map and
/// one linear-composed map (a compression of the tensor map), both built
/// deterministically from the master seed.
pub struct StandardMaps {
    pub tensor: MapDescriptor,
    pub hadamard: MapDescriptor,
    pub trace_pair: Option<MapDescriptor>,
    pub congruence: MapDescriptor,
    pub linear_composed: MapDescriptor,
}

impl StandardMaps {
    pub fn build(cfg: &SuiteConfig) -> Result<Self> {
        let (q, k) = (cfg.q, cfg.k);
        let mut rng = RngStream::from_seed(cfg.seed).substream_named("standard-maps");
        let tensor = MapDescriptor::tensor(k, q)?;
        let hadamard = MapDescriptor::hadamard(k, q)?;
        let trace_pair = (k == 2)
            .then(|| MapDescriptor::normalized_trace_pair(q))
            .transpose()?;
        let anchors = (0..k)
            .map(|_| pmm_core::random::random_positive(q, cfg.spectrum, &mut rng))
            .collect();
        let congruence = MapDescriptor::congruence_transformed(hadamard.clone(), anchors)?;
        let tensor_dim = q.pow(k as u32);
        let u = haar_unitary(tensor_dim, &mut rng);
        let linear_composed = MapDescriptor::linear_composed(k, q, choi_compression(&u, q), q)?;
        Ok(Self {
            tensor,
            hadamard,
            trace_pair,
            congruence,
            linear_composed,
        })
    }

    /// The unital maps (all of which are also strictly positive here).
    pub fn unital(&self) -> Vec<&MapDescriptor> {
        let mut v = vec![&self.tensor, &self.hadamard];
        if let Some(tp) = &self.trace_pair {
            v.push(tp);
        }
        v.push(&self.congruence);
        v.push(&self.linear_composed);
        v
    }
}

fn push<F>(specs: &mut Vec<CheckSpec>, family: &'static str, name: String, run: F)
where
    F: Fn(&SuiteConfig) -> Result<CheckResult> + Send + Sync + 'static,
{
    specs.push(CheckSpec {
        name,
        family,
        expected_violation: false,
        required_margin_raw_max: None,
        run: Box::new(run),
    });
}

/// Builds every entry the configuration supports. Families that require
/// two-variable maps are skipped when `k != 2`.
pub fn registry(cfg: &SuiteConfig) -> Result<Vec<CheckSpec>> {
    let maps = StandardMaps::build(cfg)?;
    let mut specs: Vec<CheckSpec> = Vec::new();

    // ---- structural checks over every kind ------------------------------
    let mut structural: Vec<MapDescriptor> = vec![
        maps.tensor.clone(),
        maps.hadamard.clone(),
        MapDescriptor::trace_product(cfg.k, cfg.q, cfg.q)?,
    ];
    if let Some(tp) = &maps.trace_pair {
        structural.push(tp.clone());
    }
    if cfg.k == 2 {
        structural.push(MapDescriptor::rank_one(cfg.q)?);
    }
    structural.push(maps.congruence.clone());
    structural.push(maps.linear_composed.clone());

    for map in &structural {
        let m = map.clone();
        let name = format!("multilinearity/{}", map.label());
        push(&mut specs, "multilinearity", name.clone(), move |cfg| {
            check_multilinearity(&m, cfg.trials, entry_seed(cfg.seed, &name), 1e-10)
        });
        let m = map.clone();
        let name = format!("positivity/{}", map.label());
        push(&mut specs, "positivity", name.clone(), move |cfg| {
            check_positivity(&m, cfg.spectrum, cfg.trials, entry_seed(cfg.seed, &name), 1e-10)
        });
        if !matches!(map.kind, pmm_core::MapKind::RankOne) {
            let m = map.clone();
            let name = format!("adjoint-preserving/{}", map.label());
            push(&mut specs, "adjoint-preserving", name.clone(), move |cfg| {
                check_adjoint_preserving(&m, cfg.trials, entry_seed(cfg.seed, &name), 1e-10)
            });
            let m = map.clone();
            let name = format!("monotone/{}", map.label());
            push(&mut specs, "monotone", name.clone(), move |cfg| {
                check_monotone(&m, cfg.trials, entry_seed(cfg.seed, &name), cfg.tol)
            });
        }
    }
    for map in maps.unital() {
        let m = (*map).clone();
        let name = format!("unital/{}", map.label());
        push(&mut specs, "unital", name.clone(), move |cfg| {
            check_unital(&m, entry_seed(cfg.seed, &name), 1e-8)
        });
        let m = (*map).clone();
        let name = format!("russo-dye/{}", map.label());
        push(&mut specs, "russo-dye", name.clone(), move |cfg| {
            russo_dye_check(&m, cfg.trials, entry_seed(cfg.seed, &name))
        });
    }

    // ---- Jensen family ---------------------------------------------------
    for map in maps.unital() {
        for (tag, f, direction) in [
            ("square", ScalarFunction::power(2.0), Direction::Convex),
            ("sqrt", ScalarFunction::sqrt(), Direction::Concave),
        ] {
            let m = (*map).clone();
            let name = format!("cdj/{}/{tag}", map.label());
            push(&mut specs, "cdj", name.clone(), move |cfg| {
                check_cdj(
                    &m,
                    &f,
                    direction,
                    cfg.spectrum,
                    cfg.trials,
                    entry_seed(cfg.seed, &name),
                    cfg.tol,
                )
            });
        }
        // log is super-multiplicative on [1, e^2]; clamp the draw interval
        // to that window and skip the entry when it is empty.
        let e2 = std::f64::consts::E * std::f64::consts::E;
        let lo = cfg.spectrum.m.max(1.0);
        let hi = cfg.spectrum.max.min(e2);
        if lo <= hi {
            let log_iv = Interval::new(lo, hi)?;
            let m = (*map).clone();
            let name = format!("cdj/{}/log", map.label());
            push(&mut specs, "cdj", name.clone(), move |cfg| {
                check_cdj(
                    &m,
                    &ScalarFunction::log(),
                    Direction::Concave,
                    log_iv,
                    cfg.trials,
                    entry_seed(cfg.seed, &name),
                    cfg.tol,
                )
            });
        }

        for r in [0.5, 2.0, -1.0] {
            let m = (*map).clone();
            let name = format!("power-family/{}/r{r}", map.label());
            push(&mut specs, "power-family", name.clone(), move |cfg| {
                check_power_family(
                    &m,
                    r,
                    cfg.spectrum,
                    cfg.trials,
                    entry_seed(cfg.seed, &name),
                    cfg.tol,
                )
            });
        }

        for (s, t) in [(1.0, 2.0), (0.5, 1.0)] {
            let m = (*map).clone();
            let name = format!("power-monotonicity/{}/s{s}-t{t}", map.label());
            push(&mut specs, "power-monotonicity", name.clone(), move |cfg| {
                check_power_monotonicity(
                    &m,
                    s,
                    t,
                    cfg.spectrum,
                    cfg.trials,
                    entry_seed(cfg.seed, &name),
                    cfg.tol,
                )
            });
        }
    }

    // ---- mean inequalities -----------------------------------------------
    for map in maps.unital() {
        for mean in [MeanDescriptor::geometric(), MeanDescriptor::geometric_weighted(0.25)] {
            let m = (*map).clone();
            let name = format!("ando/{}/{}", map.label(), mean.name);
            push(&mut specs, "ando", name.clone(), move |cfg| {
                check_ando_multilinear(
                    &m,
                    &mean,
                    cfg.spectrum,
                    cfg.trials,
                    entry_seed(cfg.seed, &name),
                    cfg.tol,
                )
            });
        }
        let m = (*map).clone();
        let name = format!("reverse-ando/{}", map.label());
        push(&mut specs, "reverse-ando", name.clone(), move |cfg| {
            check_reverse_ando(
                &m,
                &MeanDescriptor::geometric(),
                cfg.spectrum,
                cfg.trials,
                entry_seed(cfg.seed, &name),
                cfg.tol,
            )
        });
        let m = (*map).clone();
        let name = format!("choi-normal/{}", map.label());
        push(&mut specs, "choi-normal", name.clone(), move |cfg| {
            check_choi_normal(
                &m,
                cfg.spectrum,
                cfg.trials,
                entry_seed(cfg.seed, &name),
                cfg.tol,
            )
        });
        for variant in [SchwarzVariant::Hermitian, SchwarzVariant::General] {
            let m = (*map).clone();
            let tag = match variant {
                SchwarzVariant::Hermitian => "hermitian",
                SchwarzVariant::General => "general",
            };
            let name = format!("schwarz/{}/{tag}", map.label());
            push(&mut specs, "schwarz", name.clone(), move |cfg| {
                check_schwarz_multilinear(
                    &m,
                    variant,
                    cfg.spectrum,
                    cfg.trials,
                    entry_seed(cfg.seed, &name),
                    cfg.tol,
                )
            });
        }
    }

    for mean in [
        MeanDescriptor::geometric(),
        MeanDescriptor::geometric_weighted(0.25),
        MeanDescriptor::arithmetic(),
        MeanDescriptor::harmonic(),
    ] {
        let name = format!("reverse-mean-additivity/{}", mean.name);
        push(&mut specs, "reverse-mean-additivity", name.clone(), move |cfg| {
            check_reverse_mean_additivity(
                &mean,
                cfg.q,
                cfg.spectrum,
                cfg.trials,
                entry_seed(cfg.seed, &name),
                cfg.tol,
            )
        });
    }

    // ---- two-variable families -------------------------------------------
    if cfg.k == 2 {
        for map in maps.unital() {
            let m = (*map).clone();
            let name = format!("mean-symmetrization/{}", map.label());
            push(&mut specs, "mean-symmetrization", name.clone(), move |cfg| {
                check_mean_symmetrization(
                    &m,
                    &MeanDescriptor::geometric(),
                    cfg.spectrum,
                    cfg.trials,
                    entry_seed(cfg.seed, &name),
                    cfg.tol,
                )
            });
            let m = (*map).clone();
            let name = format!("reverse-symmetrization/{}", map.label());
            push(&mut specs, "reverse-symmetrization", name.clone(), move |cfg| {
                check_reverse_symmetrization(
                    &m,
                    &MeanDescriptor::geometric(),
                    cfg.spectrum,
                    cfg.trials,
                    entry_seed(cfg.seed, &name),
                    cfg.tol,
                )
            });
            for (alpha, beta, lambda) in [(1.0, -1.0, 0.5), (2.0, 0.5, 0.3)] {
                let m = (*map).clone();
                let name = format!("fiedler-extension/{}/a{alpha}-b{beta}-l{lambda}", map.label());
                push(&mut specs, "fiedler-extension", name.clone(), move |cfg| {
                    check_fiedler_extension(
                        &m,
                        alpha,
                        beta,
                        lambda,
                        cfg.spectrum,
                        cfg.trials,
                        entry_seed(cfg.seed, &name),
                        cfg.tol,
                    )
                });
            }
        }

        for map in [&maps.hadamard, &maps.tensor]
            .into_iter()
            .chain(maps.trace_pair.as_ref())
        {
            // The halved-constant scalar-weights bound needs slot-symmetric
            // maps (Phi(X, Y) = Phi(Y, X)); the tensor map only gets the
            // two-term congruence bound.
            let symmetric = !matches!(map.kind, pmm_core::MapKind::Tensor);
            for variant in [KantorovichVariant::Congruence, KantorovichVariant::ScalarWeights] {
                if variant == KantorovichVariant::ScalarWeights && !symmetric {
                    continue;
                }
                let m = map.clone();
                let tag = match variant {
                    KantorovichVariant::Congruence => "congruence",
                    KantorovichVariant::ScalarWeights => "scalar-weights",
                    KantorovichVariant::RankOne => unreachable!(),
                };
                let name = format!("kantorovich/{}/{tag}", map.label());
                push(&mut specs, "kantorovich", name.clone(), move |cfg| {
                    check_kantorovich(
                        &m,
                        variant,
                        cfg.n,
                        cfg.spectrum,
                        cfg.trials,
                        entry_seed(cfg.seed, &name),
                        cfg.tol,
                    )
                });
            }
            let m = map.clone();
            let name = format!("convexity-profile/{}", map.label());
            push(&mut specs, "convexity-profile", name.clone(), move |cfg| {
                convexity_profile_sampled(
                    &m,
                    cfg.spectrum,
                    &[-1.0, -0.5, 0.0, 0.5, 1.0],
                    cfg.trials,
                    entry_seed(cfg.seed, &name),
                    cfg.tol,
                )
            });
        }
        let q = cfg.q;
        let name = "kantorovich/rank-one".to_string();
        push(&mut specs, "kantorovich", name.clone(), move |cfg| {
            check_kantorovich(
                &MapDescriptor::rank_one(q)?,
                KantorovichVariant::RankOne,
                1,
                cfg.spectrum,
                cfg.trials,
                entry_seed(cfg.seed, &name),
                cfg.tol,
            )
        });
    }

    // reverse Jensen holds at every arity
    for map in maps.unital() {
        for (tag, f, direction) in [
            ("square", ScalarFunction::power(2.0), Direction::Convex),
            ("inverse", ScalarFunction::power(-1.0), Direction::Convex),
            ("sqrt", ScalarFunction::sqrt(), Direction::Concave),
        ] {
            let m = (*map).clone();
            let name = format!("reverse-cdj/{}/{tag}", map.label());
            push(&mut specs, "reverse-cdj", name.clone(), move |cfg| {
                check_reverse_cdj(
                    &m,
                    &f,
                    direction,
                    cfg.spectrum,
                    cfg.trials,
                    entry_seed(cfg.seed, &name),
                    cfg.tol,
                )
            });
        }
    }

    // ---- information monotonicity ------------------------------------------
    // The map arity is n here; tuples have length k.
    for label in ["hadamard", "tensor"] {
        let build_map = move |cfg: &SuiteConfig| -> Result<MapDescriptor> {
            match label {
                "hadamard" => MapDescriptor::hadamard(cfg.n, cfg.q),
                _ => MapDescriptor::tensor(cfg.n, cfg.q),
            }
        };
        for t in [0.5, 1.0, -0.5, -1.0] {
            let name = format!("info-power/{label}/t{t}");
            push(&mut specs, "info-power", name.clone(), move |cfg| {
                check_info_monotonicity_power(
                    &build_map(cfg)?,
                    t,
                    cfg.k,
                    cfg.spectrum,
                    cfg.trials,
                    entry_seed(cfg.seed, &name),
                    cfg.tol,
                )
            });
        }
        let name = format!("info-karcher/{label}");
        push(&mut specs, "info-karcher", name.clone(), move |cfg| {
            check_info_monotonicity_karcher(
                &build_map(cfg)?,
                cfg.k,
                cfg.spectrum,
                cfg.trials,
                entry_seed(cfg.seed, &name),
                cfg.tol,
            )
        });
    }

    // ---- expected-violation catalog ----------------------------------------
    if cfg.k == 2 {
        let q = cfg.q;
        let name = "catalog/cdj-square-minus-identity/hadamard".to_string();
        specs.push(CheckSpec {
            name: name.clone(),
            family: "catalog",
            expected_violation: true,
            // the pinned witness violates Jensen with raw margin exactly -2
            required_margin_raw_max: Some(-2.0 + 1e-8),
            run: Box::new(move |cfg| {
                check_cdj_at(
                    &MapDescriptor::hadamard(2, q)?,
                    &ScalarFunction::square_minus_identity(),
                    Direction::Convex,
                    vec![
                        HermitianMatrix::identity(q).scale(2.0),
                        HermitianMatrix::identity(q),
                    ],
                    entry_seed(cfg.seed, &name),
                    cfg.tol,
                )
            }),
        });
    }

    Ok(specs)
}

/// Applies the `--checks` family filter.
pub fn filter<'a>(specs: &'a [CheckSpec], selected: &Option<Vec<String>>) -> Vec<&'a CheckSpec> {
    match selected {
        None => specs.iter().collect(),
        Some(fams) => specs
            .iter()
            .filter(|s| {
                fams.iter()
                    .any(|f| s.family == f || s.name.starts_with(f.as_str()))
            })
            .collect(),
    }
}
