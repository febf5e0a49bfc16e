//! Writer for the text LP file format understood by CPLEX, Gurobi, HiGHS,
//! SCIP and glpk (`--cpxlp`).
//!
//! Variables are named `x1..xN` and rows `c1..cM`. Zero coefficients are
//! omitted; an all-zero expression is written as `0 x1`. Variables with the
//! default bounds `[0, +inf)` and binary variables are left out of the
//! `Bounds` section.

use std::fmt::Write;

use super::{LinearProgram, Relation, Sense};

pub fn write_lp(lp: &LinearProgram, binaries: &[usize]) -> String {
    let mut out = String::new();
    out.push_str(match lp.sense {
        Sense::Minimize => "Minimize\n",
        Sense::Maximize => "Maximize\n",
    });
    out.push_str(" obj: ");
    write_expr(&mut out, &lp.objective);
    out.push('\n');

    out.push_str("Subject To\n");
    for (i, row) in lp.constraints.iter().enumerate() {
        let _ = write!(out, " c{}: ", i + 1);
        write_expr(&mut out, &row.coeffs);
        let op = match row.relation {
            Relation::LessEq => "<=",
            Relation::GreaterEq => ">=",
            Relation::Equal => "=",
        };
        let _ = writeln!(out, " {op} {}", row.rhs);
    }

    let mut is_binary = vec![false; lp.num_vars];
    for &j in binaries {
        is_binary[j] = true;
    }
    let mut bounds = String::new();
    for (j, b) in lp.var_bounds.iter().enumerate() {
        if is_binary[j] || (b.lower == 0.0 && b.upper == f64::INFINITY) {
            continue;
        }
        let name = j + 1;
        let line = match (b.lower.is_finite(), b.upper.is_finite()) {
            (false, false) => format!(" x{name} free"),
            (true, false) => format!(" x{name} >= {}", b.lower),
            (false, true) => format!(" -inf <= x{name} <= {}", b.upper),
            (true, true) if b.lower == b.upper => format!(" x{name} = {}", b.lower),
            (true, true) => format!(" {} <= x{name} <= {}", b.lower, b.upper),
        };
        bounds.push_str(&line);
        bounds.push('\n');
    }
    if !bounds.is_empty() {
        out.push_str("Bounds\n");
        out.push_str(&bounds);
    }

    if !binaries.is_empty() {
        out.push_str("Binary\n");
        let mut sorted = binaries.to_vec();
        sorted.sort_unstable();
        for j in sorted {
            let _ = writeln!(out, " x{}", j + 1);
        }
    }
    out.push_str("End\n");
    out
}

fn write_expr(out: &mut String, coeffs: &[f64]) {
    let mut first = true;
    for (j, &a) in coeffs.iter().enumerate() {
        if a == 0.0 {
            continue;
        }
        let mag = a.abs();
        let sign = if a < 0.0 { "-" } else { "+" };
        if first {
            if a < 0.0 {
                out.push_str("- ");
            }
        } else {
            let _ = write!(out, " {sign} ");
        }
        if mag == 1.0 {
            let _ = write!(out, "x{}", j + 1);
        } else {
            let _ = write!(out, "{mag} x{}", j + 1);
        }
        first = false;
    }
    if first {
        out.push_str("0 x1");
    }
}
