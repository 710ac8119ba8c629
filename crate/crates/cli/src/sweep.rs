//! Exhaustive self-consistency sweeps over small instances.

use clap::ValueEnum;
use serde::Serialize;

use unidist::orbits::{enumerate_orbit_shapes, BlockSpec};
use unidist::segcalc::{CuspLine, Segment};
use unidist::signgraph::{bfs_component, edges, tau};
use unidist::weylinv::{all_elements, all_involutions, is_minimal, springer_path};
use unidist::{Config, Error, HalfInt, OrbitDescriptor, Result, SignTuple};

#[derive(Debug, Copy, Clone, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Signgraph,
    Weyl,
    Orbits,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub suite: Suite,
    pub max: usize,
    pub checked: u64,
    pub failures: Vec<String>,
}

const WEYL_CAP: usize = 5;
const ORBIT_CAP: usize = 6;
const FAILURE_CAP: usize = 20;

fn cap(what: &'static str, size: usize, cap: usize) -> Result<()> {
    if size > cap {
        return Err(Error::CapExceeded { what, size, cap });
    }
    Ok(())
}

pub fn run(suite: Suite, max: usize, cfg: &Config) -> Result<Report> {
    let mut report = Report { suite, max, checked: 0, failures: Vec::new() };
    let fail = |report: &mut Report, msg: String| {
        if report.failures.len() < FAILURE_CAP {
            report.failures.push(msg);
        }
    };
    match suite {
        Suite::Signgraph => {
            cap("sign tuple length", max, cfg.bfs_cap)?;
            for k in 0..=max {
                for e in SignTuple::all_of_length(k) {
                    let t = tau(&e);
                    match bfs_component(&e, cfg.bfs_cap) {
                        Ok(b) if b == t => {}
                        Ok(b) => fail(&mut report, format!("{e}: tau {t}, search {b}")),
                        Err(err) => fail(&mut report, format!("{e}: {err}")),
                    }
                    for (i, f) in edges(&e) {
                        if tau(&f) != t {
                            fail(&mut report, format!("{e} -{i}-> {f} changes tau"));
                        }
                    }
                    report.checked += 1;
                }
            }
        }
        Suite::Weyl => {
            cap("rank", max, WEYL_CAP)?;
            for n in 1..=max {
                for w in all_involutions(n) {
                    match springer_path(&w) {
                        Ok(p) if is_minimal(&p.w_min) && p.sigma.conjugate(&w)? == p.w_min => {}
                        Ok(p) => fail(&mut report, format!("{w}: path ends at {}", p.w_min)),
                        Err(err) => fail(&mut report, format!("{w}: {err}")),
                    }
                    report.checked += 1;
                }
                let elems = all_elements(n);
                for w in &elems {
                    let cs = w.c_sets();
                    for sigma in &elems {
                        let cs2 = sigma.conjugate(w)?.c_sets();
                        let ok = sigma.conjugate_set(cs.c_plus) == cs2.c_plus
                            && sigma.conjugate_set(cs.c_minus) == cs2.c_minus
                            && sigma.conjugate_set(cs.c_neq) == cs2.c_neq;
                        if !ok {
                            fail(&mut report, format!("{sigma} conjugating {w} moves the c-sets wrongly"));
                        }
                        report.checked += 1;
                    }
                }
            }
        }
        Suite::Orbits => {
            cap("total block size", max, ORBIT_CAP)?;
            let line = CuspLine::even("r");
            for sizes in size_lists(max) {
                let blocks: Vec<BlockSpec> = sizes
                    .iter()
                    .map(|&n| Segment::new(line.clone(), HalfInt::HALF, HalfInt::from_doubled(2 * n as i64 - 1)).map(BlockSpec::L))
                    .collect::<Result<_>>()?;
                let mut seen = std::collections::HashSet::new();
                for o in enumerate_orbit_shapes(&blocks, cfg)? {
                    if !o.layout().satisfies(&o.tau) {
                        fail(&mut report, format!("{sizes:?}: shape {o:?} violates the constraints"));
                    }
                    let back = serde_json::to_string(&o).ok().and_then(|t| serde_json::from_str::<OrbitDescriptor>(&t).ok());
                    if back.as_ref() != Some(&o) {
                        fail(&mut report, format!("{sizes:?}: shape {o:?} does not round-trip"));
                    }
                    if !seen.insert(o.clone()) {
                        fail(&mut report, format!("{sizes:?}: shape {o:?} repeated"));
                    }
                    report.checked += 1;
                }
            }
        }
    }
    Ok(report)
}

/// Every list of positive sizes with total at most `max`, including the empty list.
fn size_lists(max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut i = 0;
    while i < out.len() {
        let total: usize = out[i].iter().sum();
        for n in 1..=max - total {
            let mut s = out[i].clone();
            s.push(n);
            out.push(s);
        }
        i += 1;
    }
    out
}
