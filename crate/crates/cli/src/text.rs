//! Plain-text rendering of vectors, subspaces and product tables in terms of
//! basis labels.

use prealg_core::{Algebra, Matrix, Subspace, Vector};

/// `2*e1 - e2`, or `0`.
pub fn combo(labels: &[String], v: &Vector) -> String {
    let mut out = String::new();
    for (label, c) in labels.iter().zip(v.coords()) {
        if c.is_zero() {
            continue;
        }
        let s = c.to_string();
        let (neg, mag) = match s.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, s),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag != "1" {
            out.push_str(&mag);
            out.push('*');
        }
        out.push_str(label);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn subspace(labels: &[String], s: &Subspace) -> String {
    if s.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = s.basis().iter().map(|v| combo(labels, v)).collect();
    format!("span{{{}}}", parts.join(", "))
}

pub fn pair(labels: &[String], (i, j): (usize, usize)) -> String {
    format!("({}, {})", labels[i], labels[j])
}

pub fn tuple(labels: &[String], indices: &[usize]) -> String {
    let names: Vec<&str> = indices.iter().map(|&i| labels[i].as_str()).collect();
    format!("({})", names.join(", "))
}

pub fn matrix(m: &Matrix) -> String {
    let rows: Vec<String> = m.row_vectors().iter().map(|r| r.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")).collect();
    format!("[{}]", rows.join("; "))
}

/// One line per nonzero basis product.
pub fn product_table(a: &Algebra) -> Vec<String> {
    let labels = a.labels();
    let mut lines = Vec::new();
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let v = a.product(i, j);
            if !v.is_zero() {
                lines.push(format!("  {} {} = {}", labels[i], labels[j], combo(labels, v)));
            }
        }
    }
    if lines.is_empty() {
        lines.push("  (all products zero)".into());
    }
    lines
}
