//! Exhaustive theorem audit over all connected graphs up to a vertex count.
//!
//! For every isomorphism class the audit certifies the graph over each
//! requested field and checks:
//!
//! * the four bi-CM characterisations and Eagon-Reiner agree (the
//!   certificate reports any disagreement as an error);
//! * `quick_reject` never rejects a bi-CM graph;
//! * the verdict is invariant under a seeded random relabelling;
//! * bipartite graphs are bi-CM iff they are staircases, chordal graphs iff
//!   they have a chordal witness, whose reduction ideal check passes;
//! * inseparability by neighbourhood complements agrees with exhaustive
//!   separation search;
//! * every bi-CM graph has a verified inseparable model whose dual
//!   specializes too, and every inseparable bi-CM graph is `G_T` for
//!   exactly one tree class, with the class counts matching the tree
//!   counts.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bicm::{certify_bicm_with, quick_reject};
use crate::classify::{
    build_bipartite_bicm, recognize_bipartite_bicm, recognize_chordal_bicm, reduction_ideal_check,
};
use crate::enumerate::{connected_classes_up_to, tree_classes};
use crate::error::{Error, Result};
use crate::generic::generic_graph;
use crate::graphs::{are_isomorphic, Graph, GraphJson};
use crate::ideals::SquarefreeIdeal;
use crate::par::{map_collect, Execution};
use crate::resolutions::FieldSpec;
use crate::separation::{
    dual_specialization_check, find_separation, inseparable_model, is_inseparable,
    linear_syzygy_graph, relation_trees,
};

/// Largest `n_max` without `big`.
pub const AUDIT_LIMIT: usize = 7;
/// Largest `n_max` with `big`.
pub const AUDIT_BIG_LIMIT: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditOptions {
    pub n_max: usize,
    /// Verdicts are counted over the first field; all fields are audited.
    pub fields: Vec<FieldSpec>,
    pub seed: u64,
    /// Allows `n_max = 8`; on 8 vertices only `quick_reject` survivors are
    /// certified.
    pub big: bool,
    pub exec: Execution,
}

impl AuditOptions {
    pub fn new(n_max: usize) -> Self {
        AuditOptions {
            n_max,
            fields: vec![FieldSpec::RATIONALS, FieldSpec::new(2).expect("2 is prime")],
            seed: 0,
            big: false,
            exec: Execution::default(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelCounts {
    pub n: usize,
    pub connected: usize,
    pub quick_reject_survivors: usize,
    pub bicm: usize,
    pub bipartite_bicm: usize,
    pub chordal_bicm: usize,
    pub inseparable_bicm: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiCmClass {
    pub graph: GraphJson,
    pub bipartite: bool,
    pub chordal: bool,
    pub inseparable: bool,
    /// Tree of the inseparable model.
    pub model_tree: GraphJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub check: String,
    pub graph: GraphJson,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub n_max: usize,
    pub fields: Vec<u64>,
    pub seed: u64,
    pub levels: Vec<LevelCounts>,
    pub bicm_classes: Vec<BiCmClass>,
    /// Graphs whose verdict depends on the field.
    pub field_dependent: Vec<GraphJson>,
    pub violations: Vec<Violation>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn pretty(&self) -> String {
        let mut s = format!(
            "audit up to n = {} over characteristics {:?}, seed {}\n",
            self.n_max, self.fields, self.seed
        );
        s.push_str(" n  connected  survivors  bi-CM  bipartite  chordal  inseparable\n");
        for l in &self.levels {
            s.push_str(&format!(
                "{:>2}  {:>9}  {:>9}  {:>5}  {:>9}  {:>7}  {:>11}\n",
                l.n,
                l.connected,
                l.quick_reject_survivors,
                l.bicm,
                l.bipartite_bicm,
                l.chordal_bicm,
                l.inseparable_bicm
            ));
        }
        if !self.field_dependent.is_empty() {
            s.push_str(&format!("field-dependent verdicts: {}\n", self.field_dependent.len()));
        }
        if self.violations.is_empty() {
            s.push_str("no violations\n");
        } else {
            for v in &self.violations {
                s.push_str(&format!("VIOLATION [{}] {:?}: {}\n", v.check, v.graph.edges, v.detail));
            }
        }
        s
    }
}

#[derive(Default)]
struct GraphOutcome {
    survivor: bool,
    bicm: bool,
    bipartite_bicm: bool,
    chordal_bicm: bool,
    inseparable_bicm: bool,
    class: Option<BiCmClass>,
    field_dependent: bool,
    violations: Vec<Violation>,
}

struct Ctx<'a> {
    g: &'a Graph,
    out: GraphOutcome,
}

impl Ctx<'_> {
    fn violation(&mut self, check: &str, detail: impl Into<String>) {
        self.out.violations.push(Violation {
            check: check.to_string(),
            graph: GraphJson::from(self.g.clone()),
            detail: detail.into(),
        });
    }

    fn expect(&mut self, ok: bool, check: &str, detail: impl FnOnce() -> String) {
        if !ok {
            self.violation(check, detail());
        }
    }

    /// Unwraps `r`, recording an error as a violation.
    fn ok<T>(&mut self, check: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(x) => Some(x),
            Err(e) => {
                self.violation(check, e.to_string());
                None
            }
        }
    }
}

fn audit_graph(g: &Graph, opts: &AuditOptions, index: usize, trees: &[Vec<Graph>]) -> GraphOutcome {
    let mut cx = Ctx {
        g,
        out: GraphOutcome::default(),
    };
    let seq = Execution::Sequential;
    let reject = quick_reject(g);
    cx.out.survivor = reject.is_none();
    let skip_certification = opts.big && g.n() == AUDIT_BIG_LIMIT && reject.is_some();

    // The neighbourhood criterion applies to every graph, bi-CM or not.
    if let (Some(insep), Some(sep)) = (
        cx.ok("inseparability", is_inseparable(g)),
        cx.ok("separation search", find_separation(g)),
    ) {
        cx.expect(insep == sep.is_none(), "inseparability criterion", || {
            format!("neighbourhood test says {insep}, candidate search found {sep:?}")
        });
    }
    if skip_certification {
        return cx.out;
    }

    let mut verdicts = Vec::new();
    for &field in &opts.fields {
        match certify_bicm_with(g, field, seq) {
            Ok(cert) => verdicts.push(cert.verdict),
            Err(e) => {
                cx.violation("certificate", format!("over {field}: {e}"));
                return cx.out;
            }
        }
    }
    let verdict = verdicts[0];
    cx.out.bicm = verdict;
    cx.out.field_dependent = verdicts.iter().any(|&v| v != verdict);

    cx.expect(!verdict || reject.is_none(), "quick_reject soundness", || {
        format!("bi-CM graph rejected: {}", reject.unwrap())
    });

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ ((g.n() as u64) << 32) ^ index as u64);
    let mut perm: Vec<usize> = (1..=g.n()).collect();
    perm.shuffle(&mut rng);
    if let Some(h) = cx.ok("relabel", g.relabel(&perm)) {
        if let Some(c) = cx.ok("relabel", certify_bicm_with(&h, opts.fields[0], seq)) {
            cx.expect(c.verdict == verdict, "relabel invariance", || format!("permutation {perm:?}"));
        }
    }

    let bipartite = g.is_bipartite().is_some();
    if bipartite {
        if let Some(w) = cx.ok("bipartite recognizer", recognize_bipartite_bicm(g)) {
            cx.expect(w.is_some() == verdict, "bipartite classification", || {
                format!("verdict {verdict}, staircase witness {w:?}")
            });
            if w.is_some() {
                let k = g.n() / 2;
                let iso = build_bipartite_bicm(k).and_then(|s| are_isomorphic(&s, g));
                if let Some(iso) = cx.ok("bipartite builder", iso) {
                    cx.expect(iso.is_some(), "bipartite uniqueness", || "not the staircase".into());
                }
            }
            cx.out.bipartite_bicm = verdict;
        }
    }

    let chordal = g.is_chordal().is_some();
    if chordal {
        if let Some(w) = cx.ok("chordal recognizer", recognize_chordal_bicm(g)) {
            cx.expect(w.is_some() == verdict, "chordal classification", || {
                format!("verdict {verdict}, witness {w:?}")
            });
            if let Some(w) = &w {
                if let Some(r) = cx.ok("reduction ideal", reduction_ideal_check(g, w)) {
                    cx.expect(r, "reduction ideal", || format!("J differs from m^2 for {w:?}"));
                }
            }
            cx.out.chordal_bicm = verdict;
        }
    }

    if !verdict {
        return cx.out;
    }
    let insep = is_inseparable(g).unwrap_or(false);
    cx.out.inseparable_bicm = insep;
    let Some(model) = cx.ok("inseparable model", inseparable_model(g)) else {
        return cx.out;
    };
    if let Some(i) = cx.ok("model inseparable", is_inseparable(&model.generic.graph)) {
        cx.expect(i, "model inseparable", || format!("G_T of {:?} is separable", model.tree));
    }
    if let Some(c) = cx.ok("model bi-CM", certify_bicm_with(&model.generic.graph, opts.fields[0], seq)) {
        cx.expect(c.verdict, "model bi-CM", || format!("G_T of {:?} is not bi-CM", model.tree));
    }
    if let Some(d) = cx.ok("dual specialization", dual_specialization_check(g)) {
        cx.expect(d, "dual specialization", || "J_T does not specialize to I_G^∨".into());
    }

    if insep {
        let dual = SquarefreeIdeal::edge_ideal(g).and_then(|i| i.alexander_dual());
        if let Some(dual) = cx.ok("dual", dual) {
            if let Some(syz) = cx.ok("syzygy graph", linear_syzygy_graph(&dual)) {
                cx.expect(syz.edges.len() + 1 == syz.m, "unique relation tree", || {
                    format!("syzygy graph has {} edges on {} nodes", syz.edges.len(), syz.m)
                });
            }
            if let Some(rts) = cx.ok("relation trees", relation_trees(&dual)) {
                cx.expect(rts.len() == 1, "unique relation tree", || format!("{} relation trees", rts.len()));
            }
        }
        cx.expect(model.is_injective(), "model of inseparable graph", || {
            "substitution is not injective".into()
        });
        let m = model.tree.m();
        let matches = trees.get(m).map_or(0, |ts| {
            ts.iter()
                .filter(|t| {
                    crate::graphs::Tree::new((*t).clone())
                        .and_then(|t| generic_graph(&t))
                        .and_then(|gt| are_isomorphic(g, &gt.graph))
                        .map(|f| f.is_some())
                        .unwrap_or(false)
                })
                .count()
        });
        cx.expect(matches == 1, "G ≅ G_T for a unique tree", || {
            format!("{matches} tree classes on {m} vertices match")
        });
    }

    cx.out.class = Some(BiCmClass {
        graph: GraphJson::from(g.clone()),
        bipartite,
        chordal,
        inseparable: insep,
        model_tree: GraphJson::from(model.tree.graph().clone()),
    });
    cx.out
}

/// Runs the audit. Errors only on guard violations; theorem failures are
/// reported as violations.
pub fn run_audit(opts: &AuditOptions) -> Result<AuditReport> {
    let limit = if opts.big { AUDIT_BIG_LIMIT } else { AUDIT_LIMIT };
    if opts.n_max > limit {
        return Err(Error::SizeGuard {
            what: if opts.big { "audit vertex count" } else { "audit vertex count without --big" },
            got: opts.n_max,
            limit,
        });
    }
    if opts.fields.is_empty() {
        return Err(Error::InvalidArgument("audit needs at least one field".into()));
    }
    let classes = connected_classes_up_to(opts.n_max, opts.exec)?;
    // trees[m] lists the tree classes on m vertices, as graphs.
    let max_m = opts.n_max / 2 + 1;
    let mut trees: Vec<Vec<Graph>> = vec![Vec::new()];
    for m in 1..=max_m {
        trees.push(tree_classes(m)?.into_iter().map(|t| t.graph().clone()).collect());
    }

    let mut report = AuditReport {
        n_max: opts.n_max,
        fields: opts.fields.iter().map(|f| f.characteristic()).collect(),
        seed: opts.seed,
        levels: Vec::new(),
        bicm_classes: Vec::new(),
        field_dependent: Vec::new(),
        violations: Vec::new(),
    };
    for level in classes.iter().skip(1) {
        let n = level[0].n();
        let items: Vec<(usize, &Graph)> = level.iter().enumerate().collect();
        let outcomes = map_collect(opts.exec, items, |(k, g)| audit_graph(g, opts, k, &trees));
        let mut counts = LevelCounts {
            n,
            connected: level.len(),
            ..LevelCounts::default()
        };
        for (g, o) in level.iter().zip(outcomes) {
            counts.quick_reject_survivors += o.survivor as usize;
            counts.bicm += o.bicm as usize;
            counts.bipartite_bicm += o.bipartite_bicm as usize;
            counts.chordal_bicm += o.chordal_bicm as usize;
            counts.inseparable_bicm += o.inseparable_bicm as usize;
            if o.field_dependent {
                report.field_dependent.push(GraphJson::from(g.clone()));
            }
            report.bicm_classes.extend(o.class);
            report.violations.extend(o.violations);
        }

        let expected_bipartite = usize::from(n % 2 == 0);
        if counts.bipartite_bicm != expected_bipartite {
            report.violations.push(level_violation(
                "bipartite class count",
                n,
                format!("{} bipartite bi-CM classes, expected {expected_bipartite}", counts.bipartite_bicm),
            ));
        }
        let expected_insep = if n % 2 == 0 { trees[n / 2 + 1].len() } else { 0 };
        if counts.inseparable_bicm != expected_insep {
            report.violations.push(level_violation(
                "inseparable class count",
                n,
                format!("{} inseparable bi-CM classes, expected {expected_insep}", counts.inseparable_bicm),
            ));
        }
        report.levels.push(counts);
    }
    Ok(report)
}

fn level_violation(check: &str, n: usize, detail: String) -> Violation {
    Violation {
        check: check.to_string(),
        graph: GraphJson { n, edges: Vec::new() },
        detail,
    }
}
