//! Acceptance run: one PASS/FAIL line per criterion, each with a runtime
//! budget. Most criteria replay the matching experiment presets; the rest
//! check the library directly.
//!
//! Criterion 1 is a known failure: the printed bottom row of the worked
//! interleaving example cannot be reproduced from the stated matrices and
//! coloring. It is reported as FAIL and does not fail the run. Any other
//! failure, or a blown budget, makes the binary exit nonzero.

#[path = "../../core/tests/support/lp_vertex_enum.rs"]
mod lp_vertex_enum;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use lp_vertex_enum::vertex_enum_min;
use stoc_core::bounds::BoundCertificate;
use stoc_core::code::Scope;
use stoc_core::construct::{
    clique_partition_code, edge_to_vertex_code, matching_code, torus_row_parity,
};
use stoc_core::design::{affine_design, family_from_design};
use stoc_core::graph::{torus_rowcol_graph, Graph};
use stoc_core::interleave::{build_interleaved_graph, greedy_coloring};
use stoc_core::limits::Limits;
use stoc_core::lp::{build_lp, enumerate_gadgets, lp_capacity_bound, solve_lp, ClosureMode};
use stoc_core::rational::ratio;
use stoc_lab::presets::{example_array, find, run_preset, RunOptions};

type Check = std::result::Result<String, String>;
type Criterion = (usize, u64, Box<dyn Fn() -> Check>);

const KNOWN_FAILURES: [usize; 1] = [1];

fn presets(names: &[&str]) -> Check {
    let opts = RunOptions::default();
    let mut items = 0;
    for name in names {
        let preset = find(name).ok_or_else(|| format!("no preset {name}"))?;
        let report = run_preset(preset, &opts).map_err(|e| format!("{name}: {e}"))?;
        if let Some(bad) = report
            .items
            .iter()
            .find(|i| i.verdict == stoc_lab::report::ItemVerdict::Fail)
        {
            return Err(format!(
                "{name}: {} expected {} got {}",
                bad.item, bad.expected, bad.got
            ));
        }
        items += report.items.len();
    }
    Ok(format!("{} preset(s), {items} items", names.len()))
}

fn row(digits: &[u32]) -> String {
    digits
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn criterion_1() -> Check {
    let array = example_array().map_err(|e| e.to_string())?;
    let (top, bottom) = (row(&array[0]), row(&array[1]));
    if top != "1 0 0 1 2 0 1 2 2" {
        return Err(format!("top row {top}"));
    }
    if bottom != "2 1 1 1 2 2 0 0 0" {
        return Err(format!("bottom row {bottom}, printed 2 1 1 1 2 2 0 0 0"));
    }
    presets(&["interleave-triangle"])
}

fn lp_matches_enumeration() -> Check {
    let lim = Limits::default();
    let graphs = [
        Graph::complete(2),
        Graph::complete(3),
        Graph::path(3),
        Graph::path(4),
        Graph::cycle(4),
        Graph::cycle(5),
        Graph::new(3, &[(0, 1), (1, 2)], true).unwrap(),
    ];
    let mut checked = 0;
    for g in &graphs {
        for (support, tau) in [(1, 1), (1, 2), (2, 1)] {
            let gadgets = enumerate_gadgets(g, support, tau, ClosureMode::Formula, &lim)
                .map_err(|e| e.to_string())?;
            let inst = build_lp(g, &gadgets, tau).map_err(|e| e.to_string())?;
            if inst.variable_count() > 12 {
                continue;
            }
            let simplex = solve_lp(&inst).map_err(|e| e.to_string())?.value;
            if Some(&simplex) != vertex_enum_min(&inst).as_ref() {
                return Err(format!(
                    "simplex and enumeration disagree on a {}-vertex graph",
                    g.n()
                ));
            }
            checked += 1;
        }
    }
    if checked == 0 {
        return Err("no instance small enough".into());
    }
    Ok(format!("{checked} instances agree"))
}

fn criterion_9() -> Check {
    let lim = Limits::default();
    for n in [5, 7] {
        let b = lp_capacity_bound(&Graph::cycle(n), 2, 2, ClosureMode::Formula, &lim)
            .map_err(|e| e.to_string())?;
        if b.relaxed != ratio(1, 2) {
            return Err(format!("C{n}: LP optimum {}", b.relaxed));
        }
    }
    let agree = lp_matches_enumeration()?;
    let p = presets(&["lp-c5", "lp-c7"])?;
    Ok(format!("{agree}; {p}"))
}

fn cube() -> Graph {
    let k2 = Graph::complete(2);
    k2.cartesian_product(&k2)
        .unwrap()
        .cartesian_product(&k2)
        .unwrap()
}

fn criterion_11() -> Check {
    let lim = Limits::default();
    let mut graphs: Vec<Graph> = Vec::new();
    graphs.extend((2..=5).map(Graph::complete));
    graphs.extend((3..=7).map(Graph::cycle));
    graphs.extend((2..=6).map(Graph::path));
    graphs.push(cube());
    graphs.push(torus_rowcol_graph(3).unwrap());
    let mut codes = 0;
    let mut certs = 0;
    let err = |e: stoc_core::Error| e.to_string();
    for g in &graphs {
        for q in [2, 3] {
            let parts = stoc_core::bounds::clique_cover_number(g, &lim).map_err(err)?;
            let mut built = vec![clique_partition_code(g, &parts, q).map_err(err)?];
            built.push(matching_code(g, &stoc_core::bounds::max_matching(g), q).map_err(err)?);
            if (0..g.n()).all(|v| g.degree(v) > 0) {
                built.push(edge_to_vertex_code(g, q).map_err(err)?);
            }
            for code in &built {
                if !code.verify(g, Scope::All).map_err(err)?.passed() {
                    return Err(format!(
                        "construction fails verification on a {}-vertex graph",
                        g.n()
                    ));
                }
                codes += 1;
            }
        }
        let found = [
            BoundCertificate::independence(g, &lim).map_err(err)?,
            BoundCertificate::mais(g, &lim).map_err(err)?,
            BoundCertificate::clique_cover(g, &lim).map_err(err)?,
            BoundCertificate::matching(g),
        ];
        for c in &found {
            c.revalidate(g)
                .map_err(|e| format!("{} witness: {e}", c.kind.name()))?;
            certs += 1;
        }
    }
    for n in 3..=5 {
        let g = torus_rowcol_graph(n).map_err(err)?;
        if !torus_row_parity(n, 2)
            .map_err(err)?
            .verify(&g, Scope::All)
            .map_err(err)?
            .passed()
        {
            return Err(format!("torus row parity fails for n = {n}"));
        }
        codes += 1;
    }
    for g in [Graph::cycle(5), cube()] {
        let coloring = greedy_coloring(&g);
        for q in [2, 3, 5] {
            let family = family_from_design(&affine_design(q).map_err(err)?).map_err(err)?;
            if family.size() < coloring.c {
                continue;
            }
            let ig = build_interleaved_graph(&g, &coloring, &family).map_err(err)?;
            if !ig.graph.is_triangle_free() {
                return Err(format!(
                    "interleaving with q = {q} creates a triangle on {} vertices",
                    g.n()
                ));
            }
        }
    }
    Ok(format!(
        "{codes} codes verified, {certs} witnesses revalidated, triangle-freeness kept"
    ))
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        (1, 1, Box::new(criterion_1)),
        (2, 1, Box::new(|| presets(&["kirkman"]))),
        (3, 10, Box::new(|| presets(&["rate-preservation"]))),
        (4, 30, Box::new(|| presets(&["mais-lifting"]))),
        (
            5,
            5,
            Box::new(|| presets(&["torus-3", "torus-4", "torus-5"])),
        ),
        (6, 60, Box::new(|| presets(&["lattice-windows"]))),
        (7, 60, Box::new(|| presets(&["capacity-1d"]))),
        (8, 120, Box::new(|| presets(&["oracle-sandwich"]))),
        (9, 60, Box::new(criterion_9)),
        (10, 30, Box::new(|| presets(&["rect-axial"]))),
        (11, 600, Box::new(criterion_11)),
    ];
    let mut unexpected = 0;
    for (n, budget, check) in &criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(*budget);
        let (word, detail) = match (&outcome, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over the {budget} s budget")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        let known = KNOWN_FAILURES.contains(n);
        let note = if word == "FAIL" && known {
            " (known)"
        } else {
            ""
        };
        println!(
            "criterion {n}: {word}{note} [{:.2} s / {budget} s] {detail}",
            elapsed.as_secs_f64()
        );
        if word == "FAIL" && !known {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        println!("{unexpected} unexpected failure(s)");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
