use std::fmt::Write;

use super::Dfa;

impl Dfa {
    /// Graphviz rendering: an invisible node points at the start state,
    /// final states are drawn with a double circle, and parallel edges are
    /// merged into one labelled edge.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph dfa {\n    rankdir=LR;\n    __start [shape=point];\n");
        for q in 0..self.state_count() {
            let shape = if self.is_final(q) {
                "doublecircle"
            } else {
                "circle"
            };
            writeln!(out, "    q{q} [shape={shape}];").unwrap();
        }
        writeln!(out, "    __start -> q{};", self.start()).unwrap();
        for q in 0..self.state_count() {
            let mut targets: Vec<(usize, Vec<char>)> = Vec::new();
            for (a, &c) in self.alphabet().letters().iter().enumerate() {
                let t = self.next(q, a);
                match targets.iter_mut().find(|(x, _)| *x == t) {
                    Some((_, ls)) => ls.push(c),
                    None => targets.push((t, vec![c])),
                }
            }
            for (t, ls) in targets {
                let label: Vec<String> = ls.iter().map(char::to_string).collect();
                writeln!(out, "    q{q} -> q{t} [label=\"{}\"];", label.join(",")).unwrap();
            }
        }
        out.push_str("}\n");
        out
    }
}
