//! Text forms accepted back by the parsers.

use conspec::linalg::{FreeChainComplex, Matrix, Scalar};
use conspec::sheaf::SheafComplex;
use conspec::space::MonotoneMap;

fn scalar(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// `[[a,b],[c,d]]`; `[]` when there are no rows.
pub fn matrix(m: &Matrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| format!("[{}]", m.row(i).iter().map(scalar).collect::<Vec<_>>().join(",")))
        .collect();
    format!("[{}]", rows.join(","))
}

/// Items of a `stalk` line; `0` for the zero complex.
pub fn stalk(c: &FreeChainComplex) -> String {
    let mut items: Vec<String> = c.degrees().filter(|&n| c.rank(n) > 0).map(|n| format!("deg {n} rank {}", c.rank(n))).collect();
    for n in c.degrees() {
        let d = c.d(n);
        if !d.is_zero() {
            items.push(format!("d_{n} = {}", matrix(&d)));
        }
    }
    if items.is_empty() {
        "0".to_string()
    } else {
        items.join("; ")
    }
}

pub fn sheaf(k: &SheafComplex) -> String {
    let m = k.space();
    let mut out = vec![format!("ring {}", k.ring()), m.to_string()];
    for x in m.points().filter(|&x| !k.stalk(x).is_zero()) {
        out.push(format!("stalk {}: {}", m.id(x), stalk(k.stalk(x))));
    }
    for &(x, y) in m.covers() {
        let (src, tgt) = (k.stalk(x), k.stalk(y));
        let items: Vec<String> = src
            .degrees()
            .filter_map(|n| {
                let g = k.gen(x, y).component(n, src, tgt);
                (!g.is_zero() && g.rows() > 0 && g.cols() > 0).then(|| format!("deg {n} = {}", matrix(&g)))
            })
            .collect();
        if !items.is_empty() {
            out.push(format!("gen {}<{}: {}", m.id(x), m.id(y), items.join("; ")));
        }
    }
    out.join("\n")
}

pub fn map(f: &MonotoneMap) -> String {
    let with_header = |s: String, h: &str| s.replacen("space ", &format!("{h} "), 1);
    let assign: Vec<String> =
        f.source().points().map(|x| format!("{}={}", f.source().id(x), f.target().id(f.apply(x)))).collect();
    format!(
        "{}\n{}\nassign: {}",
        with_header(f.source().to_string(), "source"),
        with_header(f.target().to_string(), "target"),
        assign.join(" ")
    )
}
