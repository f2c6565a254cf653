use std::fmt::Write;

use super::TopGroupoid;

/// Graphviz rendering: one node per unit, one edge `d(g) → r(g)` per
/// non-unit arrow, labelled by arrow id. Output is byte-stable.
pub fn to_dot(g: &TopGroupoid) -> String {
    let mut s = String::from("digraph G {\n");
    for &u in g.units() {
        let _ = writeln!(s, "  u{u} [label=\"{u}\"];");
    }
    for a in (0..g.len()).filter(|&a| !g.is_unit(a)) {
        let _ = writeln!(s, "  u{} -> u{} [label=\"{a}\"];", g.d(a), g.r(a));
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair2_dot() {
        let expected = "digraph G {\n  u0 [label=\"0\"];\n  u1 [label=\"1\"];\n  u1 -> u0 [label=\"2\"];\n  u0 -> u1 [label=\"3\"];\n}\n";
        assert_eq!(to_dot(&TopGroupoid::pair(2)), expected);
    }
}
