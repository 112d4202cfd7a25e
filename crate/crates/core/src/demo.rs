//! Built-in demonstration instance: a same-generation query over a three
//! node graph, small enough to trace the closure loop state by state.
//!
//! The expected snapshots below were worked out by hand and double-checked
//! with the naive oracle; they drive the golden tests and the `selftest`
//! CLI command. Iteration `k` of the closure loop computes state `k` from
//! state `k - 1`; the sixth iteration changes nothing, so the loop stops
//! after six executions with the state reached at iteration five.

/// Three nodes, five edges.
pub const GRAPH: &str = "\
0 subClassOf_r 0
0 type_r 1
1 type_r 2
2 subClassOf 0
2 type 2
";

/// The query as a user would write it.
pub const GRAMMAR: &str = "\
S -> 'subClassOf_r' S 'subClassOf'
S -> 'type_r' S 'type'
S -> 'subClassOf_r' 'subClassOf'
S -> 'type_r' 'type'
";

/// The same query already in normal form, with conventional names for the
/// helper nonterminals. Golden state tables below are written against these
/// names.
pub const CNF_GRAMMAR: &str = "\
S -> S1 S5
S -> S3 S6
S -> S1 S2
S -> S3 S4
S5 -> S S2
S6 -> S S4
S1 -> 'subClassOf_r'
S2 -> 'subClassOf'
S3 -> 'type_r'
S4 -> 'type'
";

/// Number of closure-loop executions until the fixpoint is detected.
pub const ITERATIONS: usize = 6;

/// Matrix states of the closure loop as `(nonterminal, row, column)` facts:
/// entry `k` is the state after `k` loop executions, entry 0 the initial
/// matrix. Each state repeats all facts of the previous one plus the newly
/// discovered entries.
pub fn closure_states() -> Vec<Vec<(&'static str, usize, usize)>> {
    let initial = vec![
        ("S1", 0, 0),
        ("S3", 0, 1),
        ("S3", 1, 2),
        ("S2", 2, 0),
        ("S4", 2, 2),
    ];
    let additions: [&[(&str, usize, usize)]; 5] = [
        &[("S", 1, 2)],
        &[("S5", 1, 0), ("S6", 1, 2)],
        &[("S", 0, 2)],
        &[("S5", 0, 0), ("S6", 0, 2)],
        &[("S", 0, 0)],
    ];
    let mut states = vec![initial];
    for new_facts in additions {
        let mut next = states.last().unwrap().clone();
        next.extend_from_slice(new_facts);
        states.push(next);
    }
    states
}

/// The context-free relations of the fixpoint, per nonterminal.
pub fn relations() -> Vec<(&'static str, Vec<(u32, u32)>)> {
    vec![
        ("S", vec![(0, 0), (0, 2), (1, 2)]),
        ("S1", vec![(0, 0)]),
        ("S2", vec![(2, 0)]),
        ("S3", vec![(0, 1), (1, 2)]),
        ("S4", vec![(2, 2)]),
        ("S5", vec![(0, 0), (1, 0)]),
        ("S6", vec![(0, 2), (1, 2)]),
    ]
}

/// Recorded path lengths for the start nonterminal at the fixpoint of the
/// length-annotated closure, and the witnessing label words the extractor
/// finds for them.
pub fn start_paths() -> Vec<((u32, u32), u64, Vec<&'static str>)> {
    vec![
        (
            (0, 0),
            6,
            vec!["subClassOf_r", "type_r", "type_r", "type", "type", "subClassOf"],
        ),
        ((0, 2), 4, vec!["type_r", "type_r", "type", "type"]),
        ((1, 2), 2, vec!["type_r", "type"]),
    ]
}
