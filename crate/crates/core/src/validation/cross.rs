use serde::{Deserialize, Serialize};

use super::{check_isometry, check_planarity, check_tip_collinearity, kokotsakis_oracle, Complex3x3};
use crate::error::{Error, Result};
use crate::exec::{map_slice, Execution};
use crate::linkage::{classify_with, tip_b, BranchSign, CaseLabel, LinkageSpec, Sublinkage};
use crate::net::{build_unchecked, net_flexion_range, sweep, ConeNet, NetSpec};
use crate::tol;

/// Verdicts for the 3×3 block with top-left vertex `(row, col)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockVerdict {
    pub row: usize,
    pub col: usize,
    /// Classification of the block's sublinkages.
    pub predicted: bool,
    /// Outcome of the closure oracle.
    pub oracle: bool,
    pub witness: f64,
    /// The oracle could not decide (straight creases through a vertex).
    pub inconclusive: bool,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossValidation {
    /// One label per triple.
    pub labels: Vec<CaseLabel>,
    pub flexible: bool,
    /// Worst isometry deviation over a sweep, when the net is flexible.
    pub sweep_isometry: Option<f64>,
    pub sweep_planarity: Option<f64>,
    pub sweep_collinearity: Option<f64>,
    pub blocks: Vec<BlockVerdict>,
    pub agree: bool,
    pub notes: Vec<String>,
}

/// Linkage of triple `k` restricted to columns `c0 .. c0 + n`, re-based so
/// column `c0` plays `L₀`. The branch is the one reproducing the triple's
/// actual tip.
pub fn restricted_linkage(net: &ConeNet, k: usize, c0: usize, n: usize) -> Result<LinkageSpec> {
    let triples = net.triple_linkages();
    let (_, branch, lk) = triples
        .get(k)
        .ok_or_else(|| Error::InvalidInput(format!("net has no triple {k}")))?;
    let cols: Vec<&Sublinkage> = lk.all().collect();
    if n < 2 || c0 + n > cols.len() {
        return Err(Error::InvalidInput(format!("columns {c0}..{} out of range", c0 + n)));
    }
    let base = cols[c0].phi;
    let rebased: Vec<Sublinkage> = cols[c0..c0 + n].iter().map(|l| Sublinkage { phi: l.phi - base, ..**l }).collect();
    let b = tip_b(lk.a_ref, &lk.initial, *branch)?;
    let l0 = rebased[0];
    let pick = [BranchSign::Plus, BranchSign::Minus]
        .into_iter()
        .filter_map(|br| tip_b(lk.a_ref, &l0, br).ok().map(|x| (br, (x - b).abs())))
        .min_by(|x, y| x.1.total_cmp(&y.1))
        .map_or(*branch, |(br, _)| br);
    LinkageSpec::new(l0, rebased[1..].to_vec(), pick, lk.a_ref)
}

fn block_predicted(net: &ConeNet, row: usize, col: usize) -> bool {
    restricted_linkage(net, row, col, 4)
        .and_then(|l| classify_with(&l, tol::from_env()))
        .map(|c| c.label.is_flexible())
        .unwrap_or(false)
}

/// Runs classification, construction, a sweep and the oracle on every 3×3
/// block, and reports whether they agree. Failures become notes.
pub fn cross_validate(spec: &NetSpec) -> CrossValidation {
    cross_validate_with(spec, Execution::default())
}

pub fn cross_validate_with(spec: &NetSpec, exec: Execution) -> CrossValidation {
    let mut out = CrossValidation {
        labels: Vec::new(),
        flexible: false,
        sweep_isometry: None,
        sweep_planarity: None,
        sweep_collinearity: None,
        blocks: Vec::new(),
        agree: true,
        notes: Vec::new(),
    };
    if spec.profile.is_empty() {
        out.notes.push("no further sublinkages: nothing to compare".into());
        return out;
    }
    let net = match build_unchecked(spec) {
        Ok(n) => n,
        Err(e) => {
            out.agree = false;
            out.notes.push(format!("construction failed: {e}"));
            return out;
        }
    };
    out.labels = net.classification.iter().map(|c| c.label).collect();
    out.flexible = net.is_flexible();

    if out.flexible {
        match net_flexion_range(&net).first() {
            Some(iv) => {
                let states = sweep(&net, &iv.interior_samples(10), exec);
                let (mut iso, mut plan, mut col) = (0.0f64, 0.0f64, 0.0f64);
                for st in states {
                    match st.and_then(|s| Ok((check_isometry(&net.intrinsics, &s.vertices)?, s))) {
                        Ok((i, s)) => {
                            iso = iso.max(i.max);
                            plan = plan.max(check_planarity(&s.vertices).max);
                            col = col.max(check_tip_collinearity(&s.tip_points()).max);
                        }
                        Err(e) => {
                            out.agree = false;
                            out.notes.push(format!("sweep state failed: {e}"));
                        }
                    }
                }
                if iso > tol::ISOMETRY || plan > tol::PLANARITY || col > tol::COLLINEARITY {
                    out.agree = false;
                    out.notes.push(format!(
                        "flexible label but sweep deviates: isometry {iso:e}, planarity {plan:e}, collinearity {col:e}"
                    ));
                }
                out.sweep_isometry = Some(iso);
                out.sweep_planarity = Some(plan);
                out.sweep_collinearity = Some(col);
            }
            None => {
                out.agree = false;
                out.notes.push("flexible label but empty flexion range".into());
            }
        }
    }

    let rows = net.rows().saturating_sub(3);
    let cols = net.cols().saturating_sub(3);
    let windows: Vec<(usize, usize)> = (0..rows).flat_map(|r| (0..cols).map(move |c| (r, c))).collect();
    if windows.is_empty() {
        out.notes.push("fewer than four columns: no 3x3 block to test".into());
    }
    out.blocks = map_slice(exec, &windows, |&(row, col)| {
        let predicted = block_predicted(&net, row, col);
        let (oracle, witness, inconclusive) = match Complex3x3::from_window(&net.vertices, row, col) {
            Ok(c) => {
                let r = kokotsakis_oracle(&c);
                (r.flexible, r.witness, r.degenerate && !r.flexible)
            }
            Err(_) => (false, 0.0, true),
        };
        BlockVerdict { row, col, predicted, oracle, witness, inconclusive, agree: inconclusive || predicted == oracle }
    });
    for b in &out.blocks {
        if b.inconclusive {
            out.notes.push(format!("block ({}, {}): straight creases, oracle inconclusive", b.row, b.col));
        } else if !b.agree {
            out.agree = false;
            out.notes.push(format!(
                "block ({}, {}): classification says {}, oracle says {}",
                b.row,
                b.col,
                if b.predicted { "flexible" } else { "rigid" },
                if b.oracle { "flexible" } else { "rigid" }
            ));
        }
    }
    out
}
