//! Human-readable reports. Decimals are hints and always carry `≈`.

use std::cmp::Ordering;
use std::fmt::Write as _;

use lattice_cover::bounds::{cmp_prior_bound, prior_bound_f64, DensityVerdict, Verdict, PRIOR_BOUND_EXPR};
use lattice_cover::certificate::SearchTarget;
use lattice_cover::search::{SearchOutcome, SearchStats};
use lattice_cover::verifier::{
    CongruenceOutcome, Coverage, Multiplicity, StrictReport, TransitivityOutcome, VerificationReport,
};
use lattice_cover::{IntervalUnion, Rational, SqrtInterval, SqrtRational};

fn dec(x: &SqrtRational) -> String {
    if x.is_infinite() {
        "∞".to_string()
    } else {
        format!("{:.6}", x.to_f64())
    }
}

fn approx_interval(iv: &SqrtInterval) -> String {
    let close = if iv.hi().is_infinite() { ")" } else { "]" };
    format!("≈ [{}, {}{close}", dec(iv.lo()), dec(iv.hi()))
}

pub fn verification(r: &VerificationReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "name: {}", r.name);
    let _ = writeln!(s, "index: {}", r.index);
    let _ = writeln!(s, "clusters: {}", r.clusters);
    match &r.coverage {
        Coverage::Covered => s.push_str("coverage: covered\n"),
        Coverage::Uncovered { witness } => {
            let _ = writeln!(s, "coverage: uncovered, no cluster point in the coset of {witness}");
        }
    }
    match r.multiplicity {
        Multiplicity::Partition => s.push_str("multiplicity: partition\n"),
        Multiplicity::Cover { overlap } => {
            let _ = writeln!(s, "multiplicity: cover with overlap {overlap}");
        }
    }
    let _ = writeln!(s, "alpha_sq: {}", r.alpha_sq);
    let _ = writeln!(s, "beta_sq: {}", r.beta_sq);
    if r.admissible {
        s.push_str("admissible: yes\n");
    } else if r.alpha_sq.is_zero() {
        s.push_str("admissible: no, two clusters share a center\n");
    } else {
        let _ = writeln!(
            s,
            "admissible: no, 4·beta_sq = {} exceeds alpha_sq",
            Rational::from(4) * &r.beta_sq
        );
    }
    match &r.interval {
        Some(iv) => {
            let _ = writeln!(s, "interval: {}  {}", iv.pretty(), approx_interval(iv));
        }
        None => s.push_str("interval: none\n"),
    }
    let _ = writeln!(s, "result: {}", if r.is_verified() { "verified" } else { "falsified" });
    s
}

pub fn strict(r: &StrictReport) -> String {
    let mut s = String::new();
    match &r.congruence {
        CongruenceOutcome::Pass { .. } => s.push_str("strict congruence: pass\n"),
        CongruenceOutcome::Fail { first, second } => {
            let _ = writeln!(
                s,
                "strict congruence: fail, clusters {first} and {second} are not congruent"
            );
        }
    }
    let _ = writeln!(s, "strict disjointness: {}", if r.disjoint { "pass" } else { "fail" });
    match &r.transitivity {
        TransitivityOutcome::Pass { .. } => s.push_str("strict transitivity: pass\n"),
        TransitivityOutcome::Fail { first, second } => {
            let _ = writeln!(
                s,
                "strict transitivity: fail, no lattice-preserving symmetry maps orbit {first} onto orbit {second}"
            );
        }
    }
    let _ = writeln!(s, "strict: {}", if r.passed() { "pass" } else { "fail" });
    s
}

pub fn union(inputs: &[(String, String, SqrtInterval)], u: &IntervalUnion) -> String {
    let mut s = String::from("certificates:\n");
    for (source, name, iv) in inputs {
        let _ = writeln!(s, "  {source}  {name}  {}  {}", iv.pretty(), approx_interval(iv));
    }
    s.push_str("union:\n");
    for c in &u.components {
        let _ = writeln!(s, "  {}  {}", c.pretty(), approx_interval(c));
    }
    if u.gaps.is_empty() {
        s.push_str("gaps: none\n");
    } else {
        s.push_str("gaps:\n");
        for g in &u.gaps {
            let _ = writeln!(
                s,
                "  {}  ≈ ({}, {}), width ≈ {:.6}",
                g.pretty(),
                dec(&g.lo),
                dec(&g.hi),
                g.approx_width()
            );
        }
    }
    s
}

fn stats_lines(s: &mut String, st: &SearchStats) {
    let _ = writeln!(
        s,
        "enumerated: {} lattices, {} pruned, {} searched, {} over budget, {} shapes, {} nodes",
        st.lattices_enumerated, st.lattices_pruned, st.lattices_searched, st.lattices_over_budget, st.shapes, st.nodes
    );
}

pub fn search(target: &SearchTarget, outcome: &SearchOutcome) -> String {
    let mut s = String::new();
    let _ = write!(
        s,
        "target: alpha_sq >= {}, beta_sq <= {}",
        target.alpha_sq_min, target.beta_sq_max
    );
    if let Some(iv) = target.interval() {
        let _ = write!(s, " (d in {}  {})", iv.pretty(), approx_interval(&iv));
    }
    s.push('\n');
    match outcome {
        SearchOutcome::Found { report, stats, .. } => {
            let _ = writeln!(
                s,
                "limits: lattice index <= {}, at most {} orbits, {} nodes per lattice",
                stats.max_index, stats.max_orbits, stats.node_budget
            );
            stats_lines(&mut s, stats);
            let iv = report.interval.as_ref().expect("found certificates verify");
            let _ = writeln!(
                s,
                "outcome: found, index {}, {} clusters, alpha_sq {}, beta_sq {}, interval {}",
                report.index,
                report.clusters,
                report.alpha_sq,
                report.beta_sq,
                iv.pretty()
            );
        }
        SearchOutcome::Exhausted { stats } => {
            let _ = writeln!(
                s,
                "limits: lattice index <= {}, at most {} orbits, {} nodes per lattice",
                stats.max_index, stats.max_orbits, stats.node_budget
            );
            stats_lines(&mut s, stats);
            let _ = writeln!(
                s,
                "outcome: exhausted, no certificate partitions Z² into at most {} cluster orbits of at most {} points \
                 with enclosing-circle centers over any lattice of index <= {}",
                stats.max_orbits, stats.k_max, stats.max_index
            );
        }
        SearchOutcome::BudgetExceeded { stats, timed_out } => {
            let _ = writeln!(
                s,
                "limits: lattice index <= {}, at most {} orbits, {} nodes per lattice",
                stats.max_index, stats.max_orbits, stats.node_budget
            );
            stats_lines(&mut s, stats);
            let why = if *timed_out {
                "time limit reached"
            } else {
                "node budget exhausted"
            };
            let _ = writeln!(
                s,
                "outcome: budget exceeded ({why}) on {} lattices",
                stats.lattices_over_budget
            );
        }
        SearchOutcome::Infeasible {
            alpha_sq_min, k_max, ..
        } => {
            let lhs = Rational::from(3) * alpha_sq_min.square();
            let rhs = 4 * k_max * k_max;
            let _ = writeln!(
                s,
                "outcome: infeasible, at most {k_max} lattice points fit in a cluster disk and \
                 3·alpha_sq² = {lhs} > 4·k_max² = {rhs}"
            );
        }
    }
    s
}

fn cmp_symbol(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "<",
        Ordering::Equal => "=",
        Ordering::Greater => ">",
    }
}

fn prior_relation(d: &Rational) -> &'static str {
    match cmp_prior_bound(d) {
        Ordering::Less => "below",
        Ordering::Equal => "equal to",
        Ordering::Greater => "above",
    }
}

/// `scan` is `Some(largest uncoverable)` for threshold scans.
pub fn bounds(rows: &[DensityVerdict], scan: Option<Option<&Rational>>) -> String {
    let mut s = format!(
        "{:<12} {:>6}  {:<12} {:<13} {}\n",
        "d", "k", "k²d⁴ vs 12", "verdict", "d (decimal)"
    );
    for r in rows {
        let verdict = match r.verdict {
            Verdict::Uncoverable => "uncoverable",
            Verdict::Inconclusive => "inconclusive",
        };
        let _ = writeln!(
            s,
            "{:<12} {:>6}  {:<12} {:<13} ≈ {:.6}",
            r.d.to_string(),
            r.k,
            cmp_symbol(r.comparison),
            verdict,
            r.d.to_f64()
        );
    }
    let _ = writeln!(s, "prior bound: {PRIOR_BOUND_EXPR} ≈ {:.6}", prior_bound_f64());
    match scan {
        Some(Some(d)) => {
            let _ = writeln!(
                s,
                "largest uncoverable grid d: {d} ≈ {:.6}, {} the prior bound",
                d.to_f64(),
                prior_relation(d)
            );
        }
        Some(None) => s.push_str("largest uncoverable grid d: none\n"),
        None => {
            for r in rows {
                let _ = writeln!(s, "d = {} is {} the prior bound", r.d, prior_relation(&r.d));
            }
        }
    }
    s
}
