//! Seeded random instance generators shared by the integration suites.
#![allow(dead_code)] // each suite uses its own subset

use cfpq_core::{CnfGrammar, Grammar, Graph};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub const LABELS: [&str; 4] = ["a", "b", "c", "d"];

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// A random edge-list text over at most `max_nodes` nodes and `max_edges`
/// edges, labels drawn from [`LABELS`].
pub fn random_graph_text(rng: &mut StdRng, max_nodes: usize, max_edges: usize) -> String {
    let nodes = rng.gen_range(1..=max_nodes);
    let edges = rng.gen_range(0..=max_edges);
    let mut text = String::new();
    for _ in 0..edges {
        let src = rng.gen_range(0..nodes);
        let dst = rng.gen_range(0..nodes);
        let label = LABELS[rng.gen_range(0..LABELS.len())];
        text.push_str(&format!("v{src} {label} v{dst}\n"));
    }
    text
}

pub fn random_graph(rng: &mut StdRng, max_nodes: usize, max_edges: usize) -> Graph {
    Graph::from_edge_list(&random_graph_text(rng, max_nodes, max_edges)).unwrap()
}

/// A random grammar already in normal form: at most `max_nonterms`
/// nonterminals (named `N0..`), `max_binary` binary rules and `max_terminal`
/// terminal rules over [`LABELS`]. At least one terminal rule is always
/// present so something can be derived.
pub fn random_cnf_grammar_text(
    rng: &mut StdRng,
    max_nonterms: usize,
    max_binary: usize,
    max_terminal: usize,
) -> String {
    let nonterms = rng.gen_range(1..=max_nonterms);
    let binary = rng.gen_range(0..=max_binary);
    let terminal = rng.gen_range(1..=max_terminal);
    let mut text = String::new();
    for _ in 0..binary {
        let a = rng.gen_range(0..nonterms);
        let b = rng.gen_range(0..nonterms);
        let c = rng.gen_range(0..nonterms);
        text.push_str(&format!("N{a} -> N{b} N{c}\n"));
    }
    for _ in 0..terminal {
        let a = rng.gen_range(0..nonterms);
        let label = LABELS[rng.gen_range(0..LABELS.len())];
        text.push_str(&format!("N{a} -> '{label}'\n"));
    }
    text
}

pub fn random_cnf_grammar(
    rng: &mut StdRng,
    max_nonterms: usize,
    max_binary: usize,
    max_terminal: usize,
) -> (Grammar, CnfGrammar) {
    let text = random_cnf_grammar_text(rng, max_nonterms, max_binary, max_terminal);
    let grammar = Grammar::parse(&text).unwrap();
    let cnf = grammar.to_cnf();
    (grammar, cnf)
}

/// A random unrestricted grammar: at most `max_nonterms` nonterminals,
/// `max_rules` productions, right-hand sides of one to four symbols mixing
/// terminals and nonterminals (never empty).
pub fn random_raw_grammar_text(rng: &mut StdRng, max_nonterms: usize, max_rules: usize) -> String {
    let nonterms = rng.gen_range(1..=max_nonterms);
    let rules = rng.gen_range(1..=max_rules);
    let mut text = String::new();
    for _ in 0..rules {
        let lhs = rng.gen_range(0..nonterms);
        let len = rng.gen_range(1..=4);
        let mut line = format!("N{lhs} ->");
        for _ in 0..len {
            if rng.gen_bool(0.5) {
                line.push_str(&format!(" N{}", rng.gen_range(0..nonterms)));
            } else {
                line.push_str(&format!(" '{}'", LABELS[rng.gen_range(0..LABELS.len())]));
            }
        }
        line.push('\n');
        text.push_str(&line);
    }
    text
}

/// A random instance for engine/oracle comparison: graph plus normal-form
/// grammar, sized per the verification suites.
pub fn random_instance(rng: &mut StdRng) -> (Graph, Grammar, CnfGrammar) {
    let graph = random_graph(rng, 12, 40);
    let (grammar, cnf) = random_cnf_grammar(rng, 4, 8, 4);
    (graph, grammar, cnf)
}
