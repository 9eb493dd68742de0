//! Deterministic standalone SVG renderings.

use std::fmt::Write;

use crate::cantor_model::Word;
use crate::error::{Error, Result};
use crate::nv_patterns::{NVElement, PatternTree};
use crate::tree_calculus::{Symbol, Tree};
use crate::Ifs;

const WIDTH: f64 = 800.0;
const ROW: f64 = 24.0;
const CELL: f64 = 320.0;

fn header(w: f64, h: f64) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.0} {h:.0}\">\n"
    )
}

/// One horizontal row of bars per generation `0..=max_gen`.
pub fn render_ifs(ifs: &Ifs, max_gen: usize) -> String {
    let approx = ifs.to_scalar::<f64>();
    let height = ROW * (max_gen as f64 + 1.0) + 10.0;
    let mut out = header(WIDTH + 20.0, height);
    for g in 0..=max_gen {
        let y = 5.0 + ROW * g as f64;
        writeln!(out, "  <g class=\"generation\" data-generation=\"{g}\">").unwrap();
        for iv in approx.generation(g) {
            writeln!(
                out,
                "    <rect x=\"{:.4}\" y=\"{y:.1}\" width=\"{:.4}\" height=\"{:.1}\" fill=\"black\"/>",
                10.0 + iv.lo * WIDTH,
                (iv.hi - iv.lo) * WIDTH,
                ROW * 0.6
            )
            .unwrap();
        }
        writeln!(out, "  </g>").unwrap();
    }
    out.push_str("</svg>\n");
    out
}

struct Layout {
    nodes: Vec<(f64, f64)>,
    edges: Vec<((f64, f64), (f64, f64))>,
    leaves: Vec<(f64, f64)>,
}

fn layout_tree(tree: &Tree, x0: f64, width: f64) -> Layout {
    fn go(t: &Tree, depth: usize, next_leaf: &mut usize, step: f64, x0: f64, out: &mut Layout) -> (f64, f64) {
        let y = 30.0 + depth as f64 * 40.0;
        match t {
            Tree::Leaf => {
                let p = (x0 + step * (*next_leaf as f64 + 0.5), y);
                *next_leaf += 1;
                out.leaves.push(p);
                p
            }
            Tree::Node(ch) => {
                let kids: Vec<(f64, f64)> = ch.iter().map(|c| go(c, depth + 1, next_leaf, step, x0, out)).collect();
                let p = (kids.iter().map(|k| k.0).sum::<f64>() / kids.len() as f64, y);
                for k in kids {
                    out.edges.push((p, k));
                }
                out.nodes.push(p);
                p
            }
        }
    }
    let mut out = Layout {
        nodes: Vec::new(),
        edges: Vec::new(),
        leaves: Vec::new(),
    };
    let step = width / tree.leaf_count() as f64;
    go(tree, 0, &mut 0, step, x0, &mut out);
    out
}

fn tree_depth(t: &Tree) -> usize {
    match t {
        Tree::Leaf => 0,
        Tree::Node(ch) => 1 + ch.iter().map(tree_depth).max().unwrap_or(0),
    }
}

/// Source tree on the left, target tree on the right; leaves carry the
/// 1-based number of the source leaf, with `~` on reversed pieces.
pub fn render_symbol(s: &Symbol) -> String {
    let depth = tree_depth(s.source()).max(tree_depth(s.target()));
    let height = 80.0 + depth as f64 * 40.0;
    let mut out = header(2.0 * CELL + 60.0, height);
    let mut labels_target = vec![String::new(); s.leaf_count()];
    for (i, &p) in s.perm().iter().enumerate() {
        labels_target[p] = format!("{}{}", i + 1, if s.flips()[i] { "~" } else { "" });
    }
    let labels_source: Vec<String> = (1..=s.leaf_count()).map(|i| i.to_string()).collect();
    for (name, tree, x0, labels) in [
        ("source", s.source(), 20.0, &labels_source),
        ("target", s.target(), CELL + 40.0, &labels_target),
    ] {
        let l = layout_tree(tree, x0, CELL);
        writeln!(out, "  <g class=\"{name}\">").unwrap();
        for ((ax, ay), (bx, by)) in &l.edges {
            writeln!(out, "    <line x1=\"{ax:.2}\" y1=\"{ay:.2}\" x2=\"{bx:.2}\" y2=\"{by:.2}\" stroke=\"black\"/>").unwrap();
        }
        for (x, y) in &l.nodes {
            writeln!(out, "    <circle class=\"node\" cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\"/>").unwrap();
        }
        for ((x, y), label) in l.leaves.iter().zip(labels) {
            writeln!(out, "    <circle class=\"leaf\" cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"4\" fill=\"white\" stroke=\"black\"/>").unwrap();
            writeln!(out, "    <text x=\"{x:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"12\">{label}</text>", y + 18.0).unwrap();
        }
        writeln!(out, "  </g>").unwrap();
    }
    out.push_str("</svg>\n");
    out
}

fn dyadic(w: &Word) -> (f64, f64) {
    let mut lo = 0.0;
    let mut len = 1.0;
    for &b in w.letters() {
        len /= 2.0;
        if b == 1 {
            lo += len;
        }
    }
    (lo, len)
}

fn pattern_group(out: &mut String, name: &str, p: &PatternTree, labels: &[String], x0: f64) {
    writeln!(out, "  <g class=\"{name}\">").unwrap();
    for (b, label) in p.leaf_words(2).iter().zip(labels) {
        let (x, w) = dyadic(&b[0]);
        let (y, h) = dyadic(&b[1]);
        // axis 2 points up
        let (px, py, pw, ph) = (x0 + x * CELL, 10.0 + (1.0 - y - h) * CELL, w * CELL, h * CELL);
        writeln!(
            out,
            "    <rect x=\"{px:.4}\" y=\"{py:.4}\" width=\"{pw:.4}\" height=\"{ph:.4}\" fill=\"none\" stroke=\"black\"/>"
        )
        .unwrap();
        writeln!(
            out,
            "    <text x=\"{:.4}\" y=\"{:.4}\" text-anchor=\"middle\" font-size=\"12\">{label}</text>",
            px + pw / 2.0,
            py + ph / 2.0 + 4.0
        )
        .unwrap();
    }
    writeln!(out, "  </g>").unwrap();
}

/// Rectangles of a 2-dimensional pattern, numbered left to right in tree order.
pub fn render_pattern(p: &PatternTree) -> Result<String> {
    p.check_dimension(2)?;
    let labels: Vec<String> = (1..=p.leaf_count()).map(|i| i.to_string()).collect();
    let mut out = header(CELL + 20.0, CELL + 20.0);
    pattern_group(&mut out, "pattern", p, &labels, 10.0);
    out.push_str("</svg>\n");
    Ok(out)
}

/// Source and target patterns of a `2V` element side by side.
pub fn render_nv(f: &NVElement) -> Result<String> {
    if f.dim() != 2 {
        return Err(Error::DimensionMismatch(2, f.dim()));
    }
    let m = f.perm().len();
    let source_labels: Vec<String> = (1..=m).map(|i| i.to_string()).collect();
    let mut target_labels = vec![String::new(); m];
    for (i, &p) in f.perm().iter().enumerate() {
        target_labels[p] = format!("{}{}", i + 1, if f.syms()[i].is_identity() { "" } else { "*" });
    }
    let mut out = header(2.0 * CELL + 40.0, CELL + 20.0);
    pattern_group(&mut out, "source", f.source(), &source_labels, 10.0);
    pattern_group(&mut out, "target", f.target(), &target_labels, CELL + 30.0);
    out.push_str("</svg>\n");
    Ok(out)
}
