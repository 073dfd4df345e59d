//! Argument parsing and the subcommands.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use tdlc_core::coxeter::{alternating_sum_identity, bott_series, exponents, special_parabolic};
use tdlc_core::davis::{DavisChamber, DualityVerdict, TRange, TableEntry, DEFAULT_POSET_CAP};
use tdlc_core::euler::{chevalley_chi, chi_via_parahoric_sum};
use tdlc_core::graphs_of_groups::DEFAULT_BALL_CAP;
use tdlc_core::serre_graphs::{full_rough_cayley_graph, generation_witness, local_degree_bound, rough_cayley_ball, TableOracle};
use tdlc_core::simplicial::relative_cohomology;

use crate::dot;
use crate::input::{parse_rational, read_json, ComplexFile, CoxeterFile, GogFile, GraphFile, RepFile, RoughCayleyFile};
use crate::report::{
    render, AltSumReportOut, BallReport, BettiReport, BottReport, ChevalleyReport, ComponentReport, CoxeterReport,
    DavisReport, DavisRow, Format, GogReport, GraphReport, HaarReport, RoughCayleyReport, TreeCohomologyReport,
};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "tdlc", version, about = "Exact invariants of simplicial complexes, graphs of groups and Coxeter systems")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rational homology of a finite simplicial complex.
    Homology { input: PathBuf },
    /// Compactly supported rational cohomology.
    #[command(name = "cohomology-c")]
    CohomologyC { input: PathBuf },
    /// Relative cohomology H^*(K, L) of a subcomplex L of K.
    Relative { complex: PathBuf, subcomplex: PathBuf },
    /// Invariants of a Serre graph.
    Graph {
        input: PathBuf,
        /// Print Graphviz DOT instead of a report.
        #[arg(long)]
        dot: bool,
    },
    /// Rough Cayley graph of a finite group relative to a subgroup.
    RoughCayley {
        input: PathBuf,
        /// Ball radius around the base coset; the whole graph if omitted.
        #[arg(long)]
        radius: Option<usize>,
        #[arg(long)]
        dot: bool,
    },
    /// Graph of finite groups: unimodularity, Euler characteristic,
    /// Bass–Serre tree balls and tree-action cohomology.
    Gog {
        input: PathBuf,
        /// Euler characteristic as a multiple of the Haar measure of the base vertex group.
        #[arg(long)]
        chi: bool,
        /// Whether the fundamental group is unimodular.
        #[arg(long)]
        unimodular: bool,
        /// Ball of this radius in the Bass–Serre tree around the base vertex.
        #[arg(long, value_name = "R")]
        ball: Option<usize>,
        /// Cohomology of the tree action with coefficients in this representation.
        #[arg(long, value_name = "REP_JSON")]
        cohomology: Option<PathBuf>,
        /// With `--ball`, print the ball as Graphviz DOT.
        #[arg(long, requires = "ball")]
        dot: bool,
    },
    /// Coxeter system classification, Poincaré polynomials and identities.
    Coxeter {
        input: Option<PathBuf>,
        /// Named Cartan type instead of an input file, e.g. "B3" or "affine A2".
        #[arg(long, conflicts_with = "input")]
        preset: Option<String>,
        /// Growth series of the Coxeter group.
        #[arg(long)]
        poincare: bool,
        /// Exponents of a finite Coxeter group.
        #[arg(long)]
        exponents: bool,
        /// Compare the Bott series with affine length counts up to degree N.
        #[arg(long, value_name = "N")]
        bott: Option<usize>,
        /// Check the parahoric alternating-sum identity at a rational q > 1.
        #[arg(long, value_name = "Q")]
        altsum: Option<String>,
    },
    /// Davis chamber table, cd_Q(W) and the rational duality verdict.
    Davis {
        input: Option<PathBuf>,
        /// Named Cartan type instead of an input file.
        #[arg(long, conflicts_with = "input")]
        preset: Option<String>,
        /// Leave T = ∅ out of the table.
        #[arg(long)]
        nonempty_t_only: bool,
        /// Worker threads for the per-T entries.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Maximum number of spherical subsets.
        #[arg(long, default_value_t = DEFAULT_POSET_CAP)]
        cap: usize,
    },
    /// Euler characteristic of a simply connected Chevalley group over a
    /// local field with residue field of order q.
    Chevalley {
        /// Finite Cartan type such as "A2" or "G2".
        #[arg(long = "type", value_name = "TYPE")]
        cartan_type: String,
        /// Order of the residue field.
        #[arg(long)]
        q: i64,
        /// Sum over the parahoric subgroups of the affine diagram instead.
        #[arg(long)]
        via_parahorics: bool,
    },
}

/// Parses the process arguments, runs the command and returns the exit code.
pub fn main() -> i32 {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            0
        }
        Err(e) => {
            eprintln!("tdlc: {e}");
            e.exit_code()
        }
    }
}

/// Runs one command and returns the text for standard output.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    let f = cli.format;
    match &cli.command {
        Command::Homology { input } => {
            let k = read_json::<ComplexFile>(input)?.to_complex()?;
            Ok(render(&betti("homology", k.homology()?, k.euler_characteristic()), f))
        }
        Command::CohomologyC { input } => {
            let k = read_json::<ComplexFile>(input)?.to_complex()?;
            Ok(render(&betti("compact_cohomology", k.compact_cohomology()?, k.euler_characteristic()), f))
        }
        Command::Relative { complex, subcomplex } => {
            let k = read_json::<ComplexFile>(complex)?.to_complex()?;
            let l = read_json::<ComplexFile>(subcomplex)?.to_complex()?;
            let chi = k.euler_characteristic() - l.euler_characteristic();
            Ok(render(&betti("relative_cohomology", relative_cohomology(&k, &l)?, chi), f))
        }
        Command::Graph { input, dot } => {
            let file: GraphFile = read_json(input)?;
            let g = file.to_graph()?;
            if *dot {
                let labels: Vec<String> = file.vertices.iter().map(u64::to_string).collect();
                return Ok(dot::serre_graph(&g, "G", &labels));
            }
            let inv = g.invariants();
            Ok(render(
                &GraphReport {
                    vertices: g.num_vertices(),
                    edges: g.num_edges(),
                    geometric_edges: g.num_edges() / 2,
                    components: inv.components,
                    h1_dim: inv.h1_dim,
                    is_tree: inv.is_tree,
                    component_labels: g.component_labels(),
                },
                f,
            ))
        }
        Command::RoughCayley { input, radius, dot } => rough_cayley(input, *radius, *dot, f),
        Command::Gog { input, chi, unimodular, ball, cohomology, dot } => {
            gog(input, *chi, *unimodular, *ball, cohomology.as_ref(), *dot, f)
        }
        Command::Coxeter { input, preset, poincare, exponents, bott, altsum } => {
            let file = coxeter_input(input.as_ref(), preset.as_ref())?;
            Ok(render(&coxeter(&file, *poincare, *exponents, *bott, altsum.as_deref())?, f))
        }
        Command::Davis { input, preset, nonempty_t_only, jobs, cap } => {
            let file = coxeter_input(input.as_ref(), preset.as_ref())?;
            let range = if *nonempty_t_only { TRange::NonemptyOnly } else { TRange::All };
            Ok(render(&davis(&file, range, *jobs, *cap)?, f))
        }
        Command::Chevalley { cartan_type, q, via_parahorics } => Ok(render(&chevalley(cartan_type, *q, *via_parahorics)?, f)),
    }
}

fn betti(kind: &str, dims: Vec<usize>, euler_characteristic: i64) -> BettiReport {
    BettiReport { kind: kind.to_string(), dims, euler_characteristic }
}

fn rough_cayley(input: &Path, radius: Option<usize>, dot: bool, f: Format) -> Result<String, CliError> {
    let file: RoughCayleyFile = read_json(input)?;
    let group = file.group.to_group()?;
    if let Some(&x) = file.generators.iter().chain(&file.subgroup).find(|&&x| x >= group.order()) {
        return Err(CliError::invalid(format!("element {x} is not in a group of order {}", group.order())));
    }
    // S is closed under inverses.
    let mut gens: Vec<usize> = file.generators.iter().flat_map(|&s| [s, group.inv(s)]).collect();
    gens.sort_unstable();
    gens.dedup();
    let oracle = TableOracle::new(group, &file.subgroup);
    let ball = match radius {
        Some(r) => rough_cayley_ball(&oracle, &gens, r)?,
        None => full_rough_cayley_graph(&oracle, &gens)?,
    };
    if dot {
        let labels: Vec<String> = ball.cosets.iter().map(|c| format!("{c}O")).collect();
        return Ok(dot::serre_graph(&ball.graph, "RoughCayley", &labels));
    }
    let witness = generation_witness(&oracle, &gens)?;
    let report = RoughCayleyReport {
        cosets: ball.cosets.clone(),
        geometric_edges: ball.graph.num_edges() / 2,
        radius,
        connected: witness.connected,
        generates: witness.generates,
        criterion_holds: witness.connected == witness.generates,
        max_degree: (0..ball.graph.num_vertices()).map(|v| ball.graph.degree(v)).max().unwrap_or(0),
        degree_bound: local_degree_bound(&oracle, &gens),
    };
    Ok(render(&report, f))
}

fn gog(
    input: &Path,
    chi: bool,
    unimodular: bool,
    ball: Option<usize>,
    cohomology: Option<&PathBuf>,
    dot: bool,
    f: Format,
) -> Result<String, CliError> {
    let g = read_json::<GogFile>(input)?.to_gog()?;
    let summary = !chi && !unimodular && ball.is_none() && cohomology.is_none();
    let mut report = GogReport {
        vertices: g.graph().num_vertices(),
        geometric_edges: g.graph().num_edges() / 2,
        indices: g.indices(),
        unimodular: None,
        chi: None,
        ball: None,
        cohomology: None,
    };
    if unimodular || summary {
        report.unimodular = Some(g.unimodularity_check());
    }
    if chi || summary {
        report.chi = Some(HaarReport::from(&g.euler_characteristic()?));
    }
    if let Some(radius) = ball {
        let b = g.fundamental_group(0).bass_serre_ball_capped(radius, DEFAULT_BALL_CAP)?;
        if dot {
            let labels: Vec<String> = b.vertex.iter().zip(&b.depth).map(|(v, d)| format!("A{v}@{d}")).collect();
            return Ok(dot::serre_graph(&b.graph, "BassSerre", &labels));
        }
        report.ball = Some(BallReport {
            radius,
            vertices: b.graph.num_vertices(),
            geometric_edges: b.graph.num_edges() / 2,
            is_tree: b.graph.invariants().is_tree,
            over: b.vertex.clone(),
            depth: b.depth.clone(),
        });
    }
    if let Some(path) = cohomology {
        let rep = read_json::<RepFile>(path)?.to_representation()?;
        let (h0, h1) = g.tree_action_cohomology(&rep)?;
        report.cohomology = Some(TreeCohomologyReport { h0, h1 });
    }
    Ok(render(&report, f))
}

fn coxeter_input(input: Option<&PathBuf>, preset: Option<&String>) -> Result<CoxeterFile, CliError> {
    match (input, preset) {
        (Some(path), None) => read_json(path),
        (None, Some(name)) => Ok(CoxeterFile::Preset { preset: name.clone() }),
        _ => Err(CliError::invalid("give either an input file or --preset")),
    }
}

fn coxeter(
    file: &CoxeterFile,
    poincare: bool,
    want_exponents: bool,
    bott: Option<usize>,
    altsum: Option<&str>,
) -> Result<CoxeterReport, CliError> {
    let sys = file.system()?;
    let all: Vec<usize> = (0..sys.rank()).collect();
    let components = sys
        .components(&all)
        .into_iter()
        .map(|nodes| ComponentReport { finite_type: sys.classify_component(&nodes).map(|t| t.to_string()), nodes })
        .collect();
    let mut report = CoxeterReport {
        rank: sys.rank(),
        finite: sys.is_finite(),
        components,
        poincare: None,
        exponents: None,
        bott: None,
        altsum: None,
    };
    if poincare || want_exponents {
        let p = sys.poincare_poly_of(&all)?;
        if poincare {
            report.poincare = Some(p.coeffs().iter().map(ToString::to_string).collect());
        }
        if want_exponents {
            report.exponents = Some(exponents(&p)?);
        }
    }
    let needs_cartan = || {
        file.cartan()?
            .ok_or_else(|| CliError::invalid("this operation needs a Cartan matrix or a preset"))
    };
    if let Some(n) = bott {
        let affine = needs_cartan()?;
        if affine.is_finite_type() {
            return Err(CliError::invalid("--bott needs an affine Cartan matrix"));
        }
        let nodes = special_parabolic(&affine)?;
        let series = bott_series(&affine.principal_submatrix(&nodes), n)?;
        let mut counts = affine.enumerate_by_length(n)?;
        counts.resize(n + 1, 0);
        let holds = series.coeffs().iter().zip(&counts).all(|(a, &b)| *a == b.into());
        report.bott = Some(BottReport {
            degree: n,
            finite_nodes: nodes,
            series: series.coeffs().iter().map(ToString::to_string).collect(),
            counts,
            holds,
        });
    }
    if let Some(q) = altsum {
        let affine = needs_cartan()?;
        let q = parse_rational(q)?;
        let r = alternating_sum_identity(&affine, &q)?;
        report.altsum = Some(AltSumReportOut {
            q: q.to_string(),
            lhs: r.lhs.to_string(),
            rhs: r.rhs.to_string(),
            holds: r.holds,
            finite_nodes: r.finite_nodes,
        });
    }
    Ok(report)
}

fn davis(file: &CoxeterFile, range: TRange, jobs: usize, cap: usize) -> Result<DavisReport, CliError> {
    let sys = file.system()?;
    let verdict = if sys.is_finite() {
        DualityVerdict::finite(sys.rank())
    } else {
        let chamber = DavisChamber::build_any(&sys, cap)?;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .map_err(|e| CliError::Internal(e.to_string()))?;
        // Indexed parallel collection keeps poset order.
        let entries = pool.install(|| {
            chamber
                .t_indices(range)
                .into_par_iter()
                .map(|t| Ok(TableEntry { t: chamber.poset().subset(t), dims: chamber.relative_entry(t)? }))
                .collect::<Result<Vec<_>, CliError>>()
        })?;
        DualityVerdict::from_entries(entries)
    };
    Ok(DavisReport {
        cd: verdict.cd,
        duality: verdict.is_duality,
        t_range: match range {
            TRange::All => "all",
            TRange::NonemptyOnly => "nonempty",
        }
        .to_string(),
        table: verdict.table.into_iter().map(|e| DavisRow { t: e.t, dims: e.dims }).collect(),
    })
}

fn chevalley(cartan_type: &str, q: i64, via_parahorics: bool) -> Result<ChevalleyReport, CliError> {
    let finite = tdlc_core::coxeter::CartanMatrix::preset(cartan_type)?;
    if !finite.is_finite_type() {
        return Err(CliError::invalid(format!("{cartan_type} is not a finite type")));
    }
    let (value, method) = if via_parahorics {
        let affine = tdlc_core::coxeter::CartanMatrix::preset(&format!("affine {}", cartan_type.trim()))?;
        (chi_via_parahoric_sum(&affine, q)?, "parahoric_sum")
    } else {
        (chevalley_chi(&finite, q)?, "closed_form")
    };
    let h = HaarReport::from(&value);
    Ok(ChevalleyReport {
        cartan_type: cartan_type.trim().to_string(),
        q,
        method: method.to_string(),
        coefficient: h.coefficient,
        base: h.base,
        rendered: h.rendered,
    })
}
