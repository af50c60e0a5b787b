//! Argument definitions and command dispatch for the `utree` binary.

use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use utree_core::census::{label_multiset_from_u1, OracleLimits};
use utree_core::poly::u_coefficient;
use utree_core::pte::SearchLimits;
use utree_core::tree::{random_tree, to_dot, TreeJson};
use utree_core::{
    branch_weight, build_pte_tree, build_t_tree, centroid, count_subtrees_formula,
    count_subtrees_oracle, edge_labels, is_pte, label_multiset, multi_pte, poly_diff, prouhet,
    pte_degree, recognize_pte_tree, same_subtree_counts, search_pte, signature_from_u1,
    u_k_polynomial, u_polynomial, w_polynomial, BranchType, Budget, IntSequence, Partition,
    PartitionPolynomial, PteDegree, PteError, PteShape, SubtreeAgreement, Tree, Vertex,
    WeightedGraph,
};

use crate::verify::{cmd_verify_encode, VerifyOptions};

#[derive(Debug, Parser)]
#[command(name = "utree", version, about = "Exact U-polynomials of PTE trees")]
pub struct Cli {
    /// Worker threads for the enumeration (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build and inspect trees.
    #[command(subcommand)]
    Tree(TreeCmd),
    /// U, U_k and W polynomials.
    #[command(subcommand)]
    Upoly(UpolyCmd),
    /// Equal power sums.
    #[command(subcommand)]
    Pte(PteCmd),
    /// Subtree-type counts of PTE trees.
    #[command(subcommand)]
    Census(CensusCmd),
    /// Check that T_α(p) and T_α(p') agree up to U_{k+1} and differ at U_{k+2}.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct TreeInput {
    /// Tree JSON file, or `-` for stdin.
    #[arg(long)]
    pub tree: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum TreeCmd {
    /// Build T_α(p) (with --alpha) or T(p, s) (with --s).
    Build {
        #[arg(long)]
        alpha: Option<u32>,
        #[arg(long, value_delimiter = ',')]
        p: Vec<u32>,
        #[arg(long, value_delimiter = ',')]
        s: Option<Vec<u32>>,
        /// Emit DOT instead of JSON.
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Edge labels θ_e and their multiset.
    Labels(TreeInput),
    /// Centroid vertices and their branch weight.
    Centroid(TreeInput),
    /// Prints the PTE shape or `not-PTE`.
    Recognize(TreeInput),
    /// Reads (α, n, β) from U_1 alone, or prints `not-PTE`.
    Signature(TreeInput),
    /// DOT export, core edges in bold.
    Dot(TreeInput),
    /// A uniformly random labelled tree.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum UpolyCmd {
    /// U_k with --k, otherwise the full U (bounded by UTREE_BUDGET).
    Compute {
        #[command(flatten)]
        input: TreeInput,
        #[arg(long)]
        k: Option<usize>,
        /// Print the content hash instead of the terms.
        #[arg(long)]
        hash: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One coefficient of U (or of U_k with --k).
    Coeff {
        #[command(flatten)]
        input: TreeInput,
        #[arg(long, value_delimiter = ',')]
        partition: Vec<u32>,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Content hash of U_k (or U).
    Hash {
        #[command(flatten)]
        input: TreeInput,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Term-by-term difference of two polynomial files, or of two trees' U_k with --k.
    Diff {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        k: Option<usize>,
    },
    /// The states-model W of a weighted graph `{"n", "edges", "weights"?}`.
    W {
        #[arg(long)]
        graph: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum PteCmd {
    /// Whether a and b have equal power sums of degree 1..=k.
    Check {
        #[arg(long)]
        a: IntSequence,
        #[arg(long)]
        b: IntSequence,
        #[arg(long)]
        k: u32,
    },
    /// Largest k with equal power sums of degree 1..=k.
    Degree {
        #[arg(long)]
        a: IntSequence,
        #[arg(long)]
        b: IntSequence,
    },
    /// The Prouhet–Thue–Morse split of 0..2^(k+1).
    Prouhet {
        #[arg(long)]
        k: u32,
    },
    /// All size-n solutions of degree ≥ k with entries in [0, max].
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        max: i64,
        #[arg(long)]
        max_nodes: Option<u64>,
    },
    /// j multisets with pairwise equal power sums up to degree k.
    Multi {
        #[arg(long)]
        j: usize,
        #[arg(long)]
        k: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum CensusCmd {
    /// |S_{q,t}(T_α(p))| by the closed form and by enumeration.
    Count {
        #[arg(long)]
        alpha: u32,
        #[arg(long, value_delimiter = ',')]
        p: Vec<u32>,
        #[arg(long, value_delimiter = ',')]
        q: Vec<u32>,
        #[arg(long, value_delimiter = ',')]
        t: Vec<u32>,
    },
    /// Compares all subtree counts of weight ≤ k.
    Same {
        #[arg(long)]
        alpha: u32,
        #[arg(long, value_delimiter = ',')]
        p: Vec<u32>,
        #[arg(long, value_delimiter = ',')]
        q: Vec<u32>,
        #[arg(long)]
        k: u32,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub alpha: u32,
    #[arg(long, value_delimiter = ',')]
    pub p: Vec<u32>,
    /// The second sequence p'.
    #[arg(long, value_delimiter = ',')]
    pub q: Vec<u32>,
    #[arg(long)]
    pub k: u32,
    /// Defaults to k + 2.
    #[arg(long)]
    pub max_level: Option<usize>,
    /// Levels above this are decided by the closed-form coefficient only.
    #[arg(long)]
    pub enumerate_up_to: Option<usize>,
    #[arg(long)]
    pub timings: bool,
}

/// Mathematical outcome of a command: exit 0 or 1. Errors exit 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Verified,
    Refuted,
}

impl Outcome {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Verified
        } else {
            Outcome::Refuted
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Verified => 0,
            Outcome::Refuted => 1,
        }
    }
}

/// Text to print plus the outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub outcome: Outcome,
}

impl Output {
    fn ok(text: String) -> Self {
        Output {
            text,
            outcome: Outcome::Verified,
        }
    }

    fn with(text: String, ok: bool) -> Self {
        Output {
            text,
            outcome: Outcome::from_bool(ok),
        }
    }
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn load_tree(input: &TreeInput) -> Result<Tree> {
    let doc = TreeJson::parse(&read_input(&input.tree)?)?;
    Ok(doc.to_tree()?)
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("value serialises")
}

fn emit(text: String, out: &Option<PathBuf>) -> Result<String> {
    match out {
        Some(path) => {
            fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn polynomial(tree: &Tree, k: Option<usize>) -> Result<PartitionPolynomial> {
    Ok(match k {
        Some(k) => u_k_polynomial(tree, k),
        None => u_polynomial(tree, &Budget::from_env())?,
    })
}

#[derive(Serialize)]
struct LabelsJson {
    labels: Vec<u32>,
    multiset: Vec<(u32, u64)>,
}

#[derive(Serialize)]
struct CentroidJson {
    centroid: Vec<Vertex>,
    branch_weight: u64,
}

#[derive(Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[Vertex; 2]>,
    #[serde(default)]
    weights: Option<Vec<u32>>,
}

#[derive(Serialize)]
struct CountJson {
    branch_type: BranchType,
    formula: String,
    oracle: String,
}

#[derive(Serialize)]
struct SameJson {
    same: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    types_checked: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<BranchType>,
    #[serde(skip_serializing_if = "Option::is_none")]
    counts: Option<(String, String)>,
}

fn shape_json(shape: &PteShape) -> String {
    to_json(shape)
}

fn run_tree(cmd: TreeCmd) -> Result<Output> {
    Ok(match cmd {
        TreeCmd::Build {
            alpha,
            p,
            s,
            dot,
            out,
        } => {
            let tree = match (alpha, s) {
                (Some(alpha), None) => build_pte_tree(&PteShape::new(alpha, p)?),
                (None, Some(s)) => build_t_tree(&p, &s)?,
                _ => bail!("give exactly one of --alpha and --s"),
            };
            let text = if dot {
                to_dot(&tree)
            } else {
                TreeJson::from_tree(&tree).to_json_string()
            };
            Output::ok(emit(text, &out)?)
        }
        TreeCmd::Labels(input) => {
            let tree = load_tree(&input)?;
            let doc = LabelsJson {
                labels: edge_labels(&tree),
                multiset: label_multiset(&tree).iter().collect(),
            };
            Output::ok(to_json(&doc))
        }
        TreeCmd::Centroid(input) => {
            let tree = load_tree(&input)?;
            let c = centroid(&tree);
            let doc = CentroidJson {
                branch_weight: branch_weight(&tree, c[0])?,
                centroid: c,
            };
            Output::ok(to_json(&doc))
        }
        TreeCmd::Recognize(input) => match recognize_pte_tree(&load_tree(&input)?) {
            Some(shape) => Output::ok(shape_json(&shape)),
            None => Output::with("not-PTE".into(), false),
        },
        TreeCmd::Signature(input) => {
            let tree = load_tree(&input)?;
            let u1 = u_k_polynomial(&tree, 1);
            let n = tree.vertex_count() as u64;
            // validates the U_1 shape before deciding
            label_multiset_from_u1(&u1, n)?;
            match signature_from_u1(&u1, n)? {
                Some(sig) => Output::ok(to_json(&sig)),
                None => Output::with("not-PTE".into(), false),
            }
        }
        TreeCmd::Dot(input) => Output::ok(to_dot(&load_tree(&input)?)),
        TreeCmd::Random { n, seed } => {
            if n == 0 {
                bail!("a tree needs at least one vertex");
            }
            let tree = random_tree(n, &mut ChaCha8Rng::seed_from_u64(seed));
            Output::ok(TreeJson::from_tree(&tree).to_json_string())
        }
    })
}

fn load_polynomial_or_tree(path: &Path, k: Option<usize>) -> Result<PartitionPolynomial> {
    let text = read_input(path)?;
    match k {
        Some(k) => Ok(u_k_polynomial(&TreeJson::parse(&text)?.to_tree()?, k)),
        None => Ok(PartitionPolynomial::from_json(&text)?),
    }
}

fn run_upoly(cmd: UpolyCmd) -> Result<Output> {
    Ok(match cmd {
        UpolyCmd::Compute { input, k, hash, out } => {
            let poly = polynomial(&load_tree(&input)?, k)?;
            let text = if hash { poly.content_hash() } else { poly.to_json() };
            Output::ok(emit(text, &out)?)
        }
        UpolyCmd::Coeff { input, partition, k } => {
            let tree = load_tree(&input)?;
            let lambda = Partition::new(partition)?;
            let c = match k {
                Some(k) => u_k_polynomial(&tree, k).coefficient(&lambda),
                None => u_coefficient(&tree, &lambda),
            };
            Output::ok(c.to_string())
        }
        UpolyCmd::Hash { input, k } => Output::ok(polynomial(&load_tree(&input)?, k)?.content_hash()),
        UpolyCmd::Diff { a, b, k } => {
            let pa = load_polynomial_or_tree(&a, k)?;
            let pb = load_polynomial_or_tree(&b, k)?;
            let diff = poly_diff(&pa, &pb);
            Output::with(to_json(&diff), diff.is_empty())
        }
        UpolyCmd::W { graph } => {
            let doc: GraphJson = serde_json::from_str(&read_input(&graph)?)?;
            let edges = doc.edges.iter().map(|&[u, v]| (u, v)).collect();
            let g = match doc.weights {
                Some(w) => WeightedGraph::new(doc.n, edges, w)?,
                None => WeightedGraph::unit(doc.n, edges)?,
            };
            Output::ok(w_polynomial(&g, &Budget::from_env())?.to_json())
        }
    })
}

fn run_pte(cmd: PteCmd) -> Result<Output> {
    Ok(match cmd {
        PteCmd::Check { a, b, k } => {
            let ok = is_pte(&a, &b, k)?;
            Output::with(ok.to_string(), ok)
        }
        PteCmd::Degree { a, b } => match pte_degree(&a, &b)? {
            PteDegree::EqualMultisets => Output::with("equal-multisets".into(), false),
            PteDegree::Exact(k) => Output::with(k.to_string(), k >= 1),
        },
        PteCmd::Prouhet { k } => Output::ok(prouhet(k)?.to_json()),
        PteCmd::Search { n, k, max, max_nodes } => {
            let mut limits = SearchLimits::default();
            if let Some(m) = max_nodes {
                limits.max_nodes = m;
            }
            let found = match search_pte(n, k, max, limits) {
                Ok(found) => found,
                Err(PteError::SearchBudgetExceeded { budget, partial }) => {
                    let lines: Vec<String> = partial.iter().map(|c| c.to_json()).collect();
                    bail!(
                        "search budget of {budget} nodes exceeded; partial results:\n{}",
                        lines.join("\n")
                    );
                }
                Err(e) => return Err(e.into()),
            };
            let lines: Vec<String> = found.iter().map(|c| c.to_json()).collect();
            Output::with(lines.join("\n"), !found.is_empty())
        }
        PteCmd::Multi { j, k } => {
            let seqs = multi_pte(j, k)?;
            let doc: Vec<&[i64]> = seqs.iter().map(|s| s.entries()).collect();
            Output::ok(to_json(&doc))
        }
    })
}

fn run_census(cmd: CensusCmd) -> Result<Output> {
    Ok(match cmd {
        CensusCmd::Count { alpha, p, q, t } => {
            let bt = BranchType::new(q, t)?;
            let shape = PteShape::new(alpha, p.clone())?;
            let formula = count_subtrees_formula(alpha, &p, &bt)?;
            let tree = build_t_tree(&p, &p.iter().map(|x| shape.alpha() - x).collect::<Vec<_>>())?;
            let oracle = count_subtrees_oracle(&tree, &bt, OracleLimits::default())?;
            let doc = CountJson {
                branch_type: bt,
                formula: formula.to_string(),
                oracle: oracle.to_string(),
            };
            Output::with(to_json(&doc), formula == oracle)
        }
        CensusCmd::Same { alpha, p, q, k } => {
            let doc = match same_subtree_counts(alpha, &p, &q, k)? {
                SubtreeAgreement::Agree { types_checked } => SameJson {
                    same: true,
                    types_checked: Some(types_checked),
                    witness: None,
                    counts: None,
                },
                SubtreeAgreement::Differ {
                    branch_type,
                    left,
                    right,
                } => SameJson {
                    same: false,
                    types_checked: None,
                    witness: Some(branch_type),
                    counts: Some((left.to_string(), right.to_string())),
                },
            };
            let same = doc.same;
            Output::with(to_json(&doc), same)
        }
    })
}

fn run_verify(args: VerifyArgs) -> Result<Output> {
    let mut options = VerifyOptions::window(args.k);
    if let Some(m) = args.max_level {
        options.max_level = m;
        options.enumerate_up_to = m;
    }
    if let Some(m) = args.enumerate_up_to {
        options.enumerate_up_to = m;
    }
    options.with_timings = args.timings;
    let report = cmd_verify_encode(args.alpha, &args.p, &args.q, args.k, options)?;
    Ok(Output::with(report.to_json(), report.consistent_with_degree))
}

/// Runs one command inside a thread pool of the requested size.
pub fn run(cli: Cli) -> Result<Output> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(anyhow!("--threads must be positive"));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder.build()?;
    let command = cli.command;
    pool.install(|| match command {
        Command::Tree(c) => run_tree(c),
        Command::Upoly(c) => run_upoly(c),
        Command::Pte(c) => run_pte(c),
        Command::Census(c) => run_census(c),
        Command::Verify(a) => run_verify(a),
    })
}
