//! Context-free grammars: text parsing, normal-form transformation, CYK
//! membership, and bounded language enumeration.
//!
//! The grammar text format is line oriented:
//!
//! ```text
//! # same-generation query
//! S -> 'subClassOf_r' S 'subClassOf' | 'subClassOf_r' 'subClassOf'
//! S -> 'type_r' S 'type' | 'type_r' 'type'
//! ```
//!
//! Nonterminals are bare identifiers (`[A-Za-z][A-Za-z0-9_]*`), terminals are
//! single-quoted, `|` separates alternatives, `#` starts a comment outside
//! quotes, blank lines are ignored. There is no designated start symbol: the
//! start nonterminal is chosen per query.
//!
//! Normal-form grammars ([`CnfGrammar`]) contain only `A -> B C` and
//! `A -> x` rules. Empty right-hand sides are rejected at parse time, so no
//! epsilon elimination is ever needed.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

/// A grammar symbol: a nonterminal or a terminal (edge label).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Nonterminal(String),
    Terminal(String),
}

impl Symbol {
    pub fn name(&self) -> &str {
        match self {
            Symbol::Nonterminal(s) | Symbol::Terminal(s) => s,
        }
    }

    pub fn is_terminal(&self) -> bool {
        matches!(self, Symbol::Terminal(_))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Nonterminal(s) => write!(f, "{s}"),
            Symbol::Terminal(s) => write!(f, "'{s}'"),
        }
    }
}

/// One production `lhs -> rhs` with a nonempty right-hand side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Production {
    pub lhs: String,
    pub rhs: Vec<Symbol>,
}

/// Errors raised while reading or querying a grammar.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GrammarError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: production for `{lhs}` has an empty right-hand side")]
    EmptyRhs { line: usize, lhs: String },
    #[error("`{name}` is used both as a terminal and as a nonterminal")]
    KindConflict { name: String },
    #[error("unknown start symbol `{0}`")]
    UnknownSymbol(String),
}

/// A context-free grammar as written by the user: arbitrary-length
/// right-hand sides, no epsilon rules, no designated start symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grammar {
    /// Nonterminal names in order of first appearance.
    nonterminals: Vec<String>,
    terminals: BTreeSet<String>,
    productions: Vec<Production>,
}

impl Grammar {
    /// Parses grammar text. Production order is preserved; nonterminal and
    /// terminal namespaces must be disjoint.
    pub fn parse(text: &str) -> Result<Grammar, GrammarError> {
        let mut nonterminals: Vec<String> = Vec::new();
        let mut nonterm_seen: HashSet<String> = HashSet::new();
        let mut terminals: BTreeSet<String> = BTreeSet::new();
        let mut productions: Vec<Production> = Vec::new();

        let declare_nonterm = |name: &str,
                                   nonterminals: &mut Vec<String>,
                                   nonterm_seen: &mut HashSet<String>| {
            if nonterm_seen.insert(name.to_owned()) {
                nonterminals.push(name.to_owned());
            }
        };

        for (lineno, raw_line) in text.lines().enumerate() {
            let lineno = lineno + 1;
            let tokens = tokenize_line(raw_line, lineno)?;
            if tokens.is_empty() {
                continue;
            }

            let mut iter = tokens.into_iter();
            let lhs = match iter.next() {
                Some(Token {
                    kind: TokenKind::Ident(name),
                    ..
                }) => name,
                Some(tok) => {
                    return Err(GrammarError::Syntax {
                        line: lineno,
                        column: tok.column,
                        message: format!("expected nonterminal on left-hand side, found {}", tok.kind),
                    })
                }
                None => unreachable!(),
            };
            match iter.next() {
                Some(Token {
                    kind: TokenKind::Arrow,
                    ..
                }) => {}
                Some(tok) => {
                    return Err(GrammarError::Syntax {
                        line: lineno,
                        column: tok.column,
                        message: format!("expected `->` after `{lhs}`, found {}", tok.kind),
                    })
                }
                None => {
                    return Err(GrammarError::Syntax {
                        line: lineno,
                        column: raw_line.len() + 1,
                        message: format!("expected `->` after `{lhs}`"),
                    })
                }
            }
            declare_nonterm(&lhs, &mut nonterminals, &mut nonterm_seen);

            // Alternatives separated by `|`, each a nonempty symbol list.
            let mut rhs: Vec<Symbol> = Vec::new();
            let mut flush = |rhs: &mut Vec<Symbol>| -> Result<(), GrammarError> {
                if rhs.is_empty() {
                    return Err(GrammarError::EmptyRhs {
                        line: lineno,
                        lhs: lhs.clone(),
                    });
                }
                productions.push(Production {
                    lhs: lhs.clone(),
                    rhs: std::mem::take(rhs),
                });
                Ok(())
            };
            for tok in iter {
                match tok.kind {
                    TokenKind::Ident(name) => {
                        declare_nonterm(&name, &mut nonterminals, &mut nonterm_seen);
                        rhs.push(Symbol::Nonterminal(name));
                    }
                    TokenKind::Quoted(name) => {
                        terminals.insert(name.clone());
                        rhs.push(Symbol::Terminal(name));
                    }
                    TokenKind::Pipe => flush(&mut rhs)?,
                    TokenKind::Arrow => {
                        return Err(GrammarError::Syntax {
                            line: lineno,
                            column: tok.column,
                            message: "unexpected `->` in right-hand side".into(),
                        })
                    }
                }
            }
            flush(&mut rhs)?;
        }

        if let Some(name) = terminals.iter().find(|t| nonterm_seen.contains(*t)) {
            return Err(GrammarError::KindConflict { name: name.clone() });
        }

        Ok(Grammar {
            nonterminals,
            terminals,
            productions,
        })
    }

    /// Nonterminal names in order of first appearance.
    pub fn nonterminals(&self) -> &[String] {
        &self.nonterminals
    }

    pub fn terminals(&self) -> &BTreeSet<String> {
        &self.terminals
    }

    pub fn productions(&self) -> &[Production] {
        &self.productions
    }

    pub fn has_nonterminal(&self, name: &str) -> bool {
        self.nonterminals.iter().any(|n| n == name)
    }

    /// Transforms the grammar to normal form. The derivable language of
    /// every original nonterminal is unchanged (no epsilon rules exist, so
    /// this holds for all words). Three passes:
    ///
    /// 1. binarize right-hand sides longer than two, peeling symbols off the
    ///    left with fresh nonterminals;
    /// 2. lift terminals occurring in binary rules to preterminals, one
    ///    fresh nonterminal per distinct terminal;
    /// 3. eliminate unit rules `A -> B` by substituting the non-unit rules
    ///    of everything unit-reachable from `A` (cycles are fine: the
    ///    unit-reachability closure is computed first).
    ///
    /// Fresh names are `<lhs>#<k>` with a single per-grammar counter; `#`
    /// cannot occur in user names, so collisions are impossible.
    pub fn to_cnf(&self) -> CnfGrammar {
        struct WorkRule {
            lhs: String,
            /// lhs of the user rule this one descends from; fresh names
            /// are derived from it.
            origin: String,
            rhs: Vec<Symbol>,
        }

        let mut counter = 0usize;
        let mut fresh_names: Vec<String> = Vec::new();
        let mut fresh = |origin: &str, fresh_names: &mut Vec<String>| -> String {
            counter += 1;
            let name = format!("{origin}#{counter}");
            fresh_names.push(name.clone());
            name
        };

        // Pass 1: binarize long rules left to right.
        let mut rules: Vec<WorkRule> = Vec::new();
        for p in &self.productions {
            if p.rhs.len() <= 2 {
                rules.push(WorkRule {
                    lhs: p.lhs.clone(),
                    origin: p.lhs.clone(),
                    rhs: p.rhs.clone(),
                });
                continue;
            }
            let mut lhs = p.lhs.clone();
            let mut rest = p.rhs.clone();
            while rest.len() > 2 {
                let head = rest.remove(0);
                let cont = fresh(&p.lhs, &mut fresh_names);
                rules.push(WorkRule {
                    lhs,
                    origin: p.lhs.clone(),
                    rhs: vec![head, Symbol::Nonterminal(cont.clone())],
                });
                lhs = cont;
            }
            rules.push(WorkRule {
                lhs,
                origin: p.lhs.clone(),
                rhs: rest,
            });
        }

        // Pass 2: lift terminals out of binary rules, sharing one
        // preterminal per distinct terminal.
        let mut preterm: HashMap<String, String> = HashMap::new();
        let mut preterm_rules: Vec<WorkRule> = Vec::new();
        for rule in &mut rules {
            if rule.rhs.len() != 2 {
                continue;
            }
            let origin = rule.origin.clone();
            for sym in &mut rule.rhs {
                if let Symbol::Terminal(t) = sym {
                    let nt = preterm.entry(t.clone()).or_insert_with(|| {
                        let name = fresh(&origin, &mut fresh_names);
                        preterm_rules.push(WorkRule {
                            lhs: name.clone(),
                            origin: origin.clone(),
                            rhs: vec![Symbol::Terminal(t.clone())],
                        });
                        name
                    });
                    *sym = Symbol::Nonterminal(nt.clone());
                }
            }
        }
        rules.extend(preterm_rules);

        // Dense indices: user nonterminals in first-appearance order, then
        // fresh ones in creation order.
        let mut names: Vec<String> = self.nonterminals.clone();
        names.extend(fresh_names);
        let index: HashMap<String, usize> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();

        // Pass 3: unit-rule elimination via the unit-reachability closure.
        let unit_reach = {
            let mut reach: Vec<HashSet<usize>> =
                (0..names.len()).map(|i| HashSet::from([i])).collect();
            let mut changed = true;
            while changed {
                changed = false;
                for rule in &rules {
                    if let [Symbol::Nonterminal(b)] = rule.rhs.as_slice() {
                        let (a, b) = (index[&rule.lhs], index[b]);
                        let targets: Vec<usize> = reach[b].iter().copied().collect();
                        for set in reach.iter_mut() {
                            if set.contains(&a) {
                                for &t in &targets {
                                    changed |= set.insert(t);
                                }
                            }
                        }
                    }
                }
            }
            reach
        };

        let mut binary_rules: Vec<(usize, usize, usize)> = Vec::new();
        let mut binary_seen: HashSet<(usize, usize, usize)> = HashSet::new();
        let mut terminal_rules: BTreeMap<String, BTreeSet<usize>> = BTreeMap::new();
        for rule in &rules {
            let owner = index[&rule.lhs];
            match rule.rhs.as_slice() {
                [Symbol::Nonterminal(_)] => {} // unit rule, substituted away
                [Symbol::Terminal(t)] => {
                    for (a, reach) in unit_reach.iter().enumerate() {
                        if reach.contains(&owner) {
                            terminal_rules.entry(t.clone()).or_default().insert(a);
                        }
                    }
                }
                [x, y] => {
                    let (b, c) = (index[x.name()], index[y.name()]);
                    for (a, reach) in unit_reach.iter().enumerate() {
                        if reach.contains(&owner) && binary_seen.insert((a, b, c)) {
                            binary_rules.push((a, b, c));
                        }
                    }
                }
                _ => unreachable!("rules are binarized"),
            }
        }

        CnfGrammar {
            nonterm_names: names,
            index,
            binary_rules,
            terminal_rules,
        }
    }

    /// All words of length `1..=max_len` derivable from `start`, found by a
    /// breadth-first search over sentential forms. Forms whose minimal
    /// terminal yield already exceeds `max_len` are pruned, which bounds the
    /// search space.
    pub fn enumerate_language(
        &self,
        start: &str,
        max_len: usize,
    ) -> Result<BTreeSet<Vec<String>>, GrammarError> {
        if !self.has_nonterminal(start) {
            return Err(GrammarError::UnknownSymbol(start.to_owned()));
        }
        let rules: Vec<(&str, &[Symbol])> = self
            .productions
            .iter()
            .map(|p| (p.lhs.as_str(), p.rhs.as_slice()))
            .collect();
        Ok(enumerate_bounded(&rules, start, max_len))
    }
}

/// A grammar in normal form: every rule is `A -> B C` or `A -> x`, with
/// nonterminals addressed by dense indices `0..nonterm_count`. Original
/// nonterminals keep their names; fresh ones carry a `#`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfGrammar {
    nonterm_names: Vec<String>,
    index: HashMap<String, usize>,
    binary_rules: Vec<(usize, usize, usize)>,
    terminal_rules: BTreeMap<String, BTreeSet<usize>>,
}

impl CnfGrammar {
    pub fn nonterm_count(&self) -> usize {
        self.nonterm_names.len()
    }

    pub fn nonterm_names(&self) -> &[String] {
        &self.nonterm_names
    }

    pub fn nonterm_name(&self, idx: usize) -> &str {
        &self.nonterm_names[idx]
    }

    pub fn nonterm_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Rules `A -> B C` as index triples `(a, b, c)`, in grammar order.
    /// This order is the scan order of the length-annotated closure.
    pub fn binary_rules(&self) -> &[(usize, usize, usize)] {
        &self.binary_rules
    }

    /// Rules `A -> x` grouped by terminal: label -> set of lhs indices.
    pub fn terminal_rules(&self) -> &BTreeMap<String, BTreeSet<usize>> {
        &self.terminal_rules
    }

    /// Lhs indices of the rules `A -> label`, empty if the label has none.
    pub fn nonterms_for_label(&self, label: &str) -> impl Iterator<Item = usize> + '_ {
        self.terminal_rules
            .get(label)
            .into_iter()
            .flat_map(|s| s.iter().copied())
    }

    pub fn rule_count(&self) -> usize {
        self.binary_rules.len() + self.terminal_rules.values().map(BTreeSet::len).sum::<usize>()
    }

    /// CYK membership: does `start` derive the word? Unknown terminals make
    /// the word underivable rather than erroring. The empty word is never
    /// derivable (no epsilon rules).
    pub fn cyk_member<S: AsRef<str>>(&self, start: usize, word: &[S]) -> bool {
        assert!(start < self.nonterm_count(), "start index out of range");
        let n = word.len();
        if n == 0 {
            return false;
        }
        let nt = self.nonterm_count();
        // table[l - 1][i][a]: nonterminal a derives word[i..i + l]
        let mut table = vec![vec![vec![false; nt]; n]; n];
        for (i, w) in word.iter().enumerate() {
            for a in self.nonterms_for_label(w.as_ref()) {
                table[0][i][a] = true;
            }
        }
        for l in 2..=n {
            for i in 0..=n - l {
                for split in 1..l {
                    for &(a, b, c) in &self.binary_rules {
                        if table[split - 1][i][b] && table[l - split - 1][i + split][c] {
                            table[l - 1][i][a] = true;
                        }
                    }
                }
            }
        }
        table[n - 1][0][start]
    }

    /// Bounded language enumeration, as [`Grammar::enumerate_language`] but
    /// addressed by index.
    pub fn enumerate_language(&self, start: usize, max_len: usize) -> BTreeSet<Vec<String>> {
        assert!(start < self.nonterm_count(), "start index out of range");
        let mut rules: Vec<(&str, Vec<Symbol>)> = Vec::new();
        for &(a, b, c) in &self.binary_rules {
            rules.push((
                self.nonterm_name(a),
                vec![
                    Symbol::Nonterminal(self.nonterm_name(b).to_owned()),
                    Symbol::Nonterminal(self.nonterm_name(c).to_owned()),
                ],
            ));
        }
        for (t, lhss) in &self.terminal_rules {
            for &a in lhss {
                rules.push((self.nonterm_name(a), vec![Symbol::Terminal(t.clone())]));
            }
        }
        let view: Vec<(&str, &[Symbol])> = rules
            .iter()
            .map(|(lhs, rhs)| (*lhs, rhs.as_slice()))
            .collect();
        enumerate_bounded(&view, self.nonterm_name(start), max_len)
    }
}

/// Breadth-first enumeration of derivable words, shared by both grammar
/// representations. Expands the leftmost nonterminal of each sentential
/// form; a form is pruned when the sum of minimal yields of its symbols
/// exceeds `max_len`.
fn enumerate_bounded(
    rules: &[(&str, &[Symbol])],
    start: &str,
    max_len: usize,
) -> BTreeSet<Vec<String>> {
    let mut by_lhs: HashMap<&str, Vec<&[Symbol]>> = HashMap::new();
    for (lhs, rhs) in rules {
        by_lhs.entry(lhs).or_default().push(rhs);
    }

    // Minimal terminal yield per nonterminal; None = derives nothing.
    let mut min_yield: HashMap<&str, usize> = HashMap::new();
    let mut changed = true;
    while changed {
        changed = false;
        for (lhs, rhs) in rules {
            let mut total = 0usize;
            let mut known = true;
            for sym in rhs.iter() {
                match sym {
                    Symbol::Terminal(_) => total += 1,
                    Symbol::Nonterminal(n) => match min_yield.get(n.as_str()) {
                        Some(m) => total += m,
                        None => {
                            known = false;
                            break;
                        }
                    },
                }
            }
            if known && min_yield.get(lhs).is_none_or(|&m| total < m) {
                min_yield.insert(lhs, total);
                changed = true;
            }
        }
    }

    let lower_bound = |form: &[Symbol]| -> Option<usize> {
        let mut total = 0usize;
        for sym in form {
            match sym {
                Symbol::Terminal(_) => total += 1,
                Symbol::Nonterminal(n) => total += *min_yield.get(n.as_str())?,
            }
        }
        Some(total)
    };

    let mut words = BTreeSet::new();
    let mut queue: VecDeque<Vec<Symbol>> = VecDeque::new();
    let mut visited: HashSet<Vec<Symbol>> = HashSet::new();
    let initial = vec![Symbol::Nonterminal(start.to_owned())];
    if lower_bound(&initial).is_some_and(|b| b <= max_len) {
        visited.insert(initial.clone());
        queue.push_back(initial);
    }
    while let Some(form) = queue.pop_front() {
        let Some(pos) = form.iter().position(|s| !s.is_terminal()) else {
            if !form.is_empty() && form.len() <= max_len {
                words.insert(form.iter().map(|s| s.name().to_owned()).collect());
            }
            continue;
        };
        let lhs = form[pos].name();
        for rhs in by_lhs.get(lhs).into_iter().flatten() {
            let mut next = Vec::with_capacity(form.len() + rhs.len() - 1);
            next.extend_from_slice(&form[..pos]);
            next.extend_from_slice(rhs);
            next.extend_from_slice(&form[pos + 1..]);
            if lower_bound(&next).is_some_and(|b| b <= max_len) && visited.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    words
}

#[derive(Debug)]
enum TokenKind {
    Ident(String),
    Quoted(String),
    Arrow,
    Pipe,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Ident(s) => write!(f, "`{s}`"),
            TokenKind::Quoted(s) => write!(f, "'{s}'"),
            TokenKind::Arrow => write!(f, "`->`"),
            TokenKind::Pipe => write!(f, "`|`"),
        }
    }
}

struct Token {
    kind: TokenKind,
    column: usize,
}

fn tokenize_line(line: &str, lineno: usize) -> Result<Vec<Token>, GrammarError> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = line.chars().collect();
    let mut i = 0usize;
    while i < chars.len() {
        let column = i + 1;
        let c = chars[i];
        match c {
            '#' => break, // comment to end of line
            c if c.is_whitespace() => i += 1,
            '|' => {
                tokens.push(Token {
                    kind: TokenKind::Pipe,
                    column,
                });
                i += 1;
            }
            '-' => {
                if chars.get(i + 1) == Some(&'>') {
                    tokens.push(Token {
                        kind: TokenKind::Arrow,
                        column,
                    });
                    i += 2;
                } else {
                    return Err(GrammarError::Syntax {
                        line: lineno,
                        column,
                        message: "expected `->`".into(),
                    });
                }
            }
            '\'' => {
                let start = i + 1;
                let mut end = start;
                while end < chars.len() && chars[end] != '\'' {
                    end += 1;
                }
                if end == chars.len() {
                    return Err(GrammarError::Syntax {
                        line: lineno,
                        column,
                        message: "unterminated terminal quote".into(),
                    });
                }
                if end == start {
                    return Err(GrammarError::Syntax {
                        line: lineno,
                        column,
                        message: "empty terminal".into(),
                    });
                }
                tokens.push(Token {
                    kind: TokenKind::Quoted(chars[start..end].iter().collect()),
                    column,
                });
                i = end + 1;
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_')
                {
                    i += 1;
                }
                tokens.push(Token {
                    kind: TokenKind::Ident(chars[start..i].iter().collect()),
                    column,
                });
            }
            c => {
                return Err(GrammarError::Syntax {
                    line: lineno,
                    column,
                    message: format!("unexpected character `{c}`"),
                });
            }
        }
    }
    Ok(tokens)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAME_GENERATION: &str = "\
S -> 'subClassOf_r' S 'subClassOf'
S -> 'type_r' S 'type'
S -> 'subClassOf_r' 'subClassOf'
S -> 'type_r' 'type'
";

    fn word(s: &str) -> Vec<String> {
        s.split_whitespace().map(str::to_owned).collect()
    }

    #[test]
    fn parses_same_generation_query() {
        let g = Grammar::parse(SAME_GENERATION).unwrap();
        assert_eq!(g.nonterminals(), ["S".to_owned()]);
        assert_eq!(g.productions().len(), 4);
        assert_eq!(
            g.terminals().iter().cloned().collect::<Vec<_>>(),
            ["subClassOf", "subClassOf_r", "type", "type_r"]
        );
    }

    #[test]
    fn parses_alternatives_comments_and_blanks() {
        let g = Grammar::parse("# header\n\nA -> 'a' | 'b' B # trailing\nB -> 'c'\n").unwrap();
        assert_eq!(g.productions().len(), 3);
        assert_eq!(g.productions()[1].rhs.len(), 2);
    }

    #[test]
    fn single_terminal_rule() {
        let g = Grammar::parse("A -> 'a'").unwrap();
        assert_eq!(g.productions().len(), 1);
        assert_eq!(g.productions()[0].rhs, vec![Symbol::Terminal("a".into())]);
    }

    #[test]
    fn empty_rhs_is_rejected() {
        assert_eq!(
            Grammar::parse("A -> "),
            Err(GrammarError::EmptyRhs {
                line: 1,
                lhs: "A".into()
            })
        );
        assert!(matches!(
            Grammar::parse("A -> 'a' | "),
            Err(GrammarError::EmptyRhs { .. })
        ));
    }

    #[test]
    fn kind_conflict_is_rejected() {
        assert_eq!(
            Grammar::parse("A -> 'A'"),
            Err(GrammarError::KindConflict { name: "A".into() })
        );
        assert!(matches!(
            Grammar::parse("A -> B\nC -> 'B'"),
            Err(GrammarError::KindConflict { .. })
        ));
    }

    #[test]
    fn syntax_errors_carry_position() {
        match Grammar::parse("A -> $") {
            Err(GrammarError::Syntax { line, column, .. }) => {
                assert_eq!((line, column), (1, 6));
            }
            other => panic!("expected syntax error, got {other:?}"),
        }
        assert!(matches!(
            Grammar::parse("A -> 'unterminated"),
            Err(GrammarError::Syntax { .. })
        ));
    }

    /// The normal form of the same-generation query must be structurally
    /// isomorphic to the hand-written 7-nonterminal, 10-rule version: one
    /// preterminal per label and one continuation nonterminal per long rule.
    #[test]
    fn cnf_of_same_generation_matches_known_shape() {
        let g = Grammar::parse(SAME_GENERATION).unwrap();
        let cnf = g.to_cnf();
        assert_eq!(cnf.nonterm_count(), 7);
        assert_eq!(cnf.binary_rules().len(), 6);
        assert_eq!(cnf.rule_count(), 10);

        // Build the isomorphism from the roles the fresh nonterminals play.
        let pre = |label: &str| -> usize {
            let lhss = &cnf.terminal_rules()[label];
            assert_eq!(lhss.len(), 1, "one preterminal per label");
            *lhss.iter().next().unwrap()
        };
        let s = cnf.nonterm_index("S").unwrap();
        let (p_scr, p_sc) = (pre("subClassOf_r"), pre("subClassOf"));
        let (p_tr, p_t) = (pre("type_r"), pre("type"));
        let cont_sc = cnf
            .binary_rules()
            .iter()
            .find(|&&(_, b, c)| b == s && c == p_sc)
            .map(|&(a, _, _)| a)
            .expect("continuation rule over subClassOf");
        let cont_t = cnf
            .binary_rules()
            .iter()
            .find(|&&(_, b, c)| b == s && c == p_t)
            .map(|&(a, _, _)| a)
            .expect("continuation rule over type");

        let mut expected = vec![
            (s, p_scr, cont_sc),
            (cont_sc, s, p_sc),
            (s, p_tr, cont_t),
            (cont_t, s, p_t),
            (s, p_scr, p_sc),
            (s, p_tr, p_t),
        ];
        let mut actual = cnf.binary_rules().to_vec();
        expected.sort_unstable();
        actual.sort_unstable();
        assert_eq!(actual, expected);
    }

    #[test]
    fn cnf_is_identity_on_normal_form_grammars() {
        let g = Grammar::parse("S -> 'a'").unwrap();
        let cnf = g.to_cnf();
        assert_eq!(cnf.nonterm_count(), 1);
        assert_eq!(cnf.rule_count(), 1);

        let g = Grammar::parse("S -> A B\nA -> 'a'\nB -> 'b'").unwrap();
        let cnf = g.to_cnf();
        assert_eq!(cnf.nonterm_count(), 3);
        assert_eq!(cnf.rule_count(), 3);
    }

    #[test]
    fn cnf_of_three_terminal_rule() {
        let g = Grammar::parse("S -> 'a' 'b' 'c'").unwrap();
        let cnf = g.to_cnf();
        assert_eq!(cnf.binary_rules().len(), 2);
        assert_eq!(cnf.rule_count(), 5);
        let s = cnf.nonterm_index("S").unwrap();
        let expected: BTreeSet<Vec<String>> = [word("a b c")].into();
        assert_eq!(cnf.enumerate_language(s, 4), expected);
        assert_eq!(g.enumerate_language("S", 4).unwrap(), expected);
    }

    #[test]
    fn cnf_resolves_unit_cycles() {
        let g = Grammar::parse("A -> B\nB -> A\nB -> 'b'").unwrap();
        let cnf = g.to_cnf();
        assert!(cnf.cyk_member(cnf.nonterm_index("A").unwrap(), &["b"]));
        assert!(cnf.cyk_member(cnf.nonterm_index("B").unwrap(), &["b"]));
    }

    #[test]
    fn cyk_on_same_generation_normal_form() {
        let cnf = Grammar::parse(SAME_GENERATION).unwrap().to_cnf();
        let s = cnf.nonterm_index("S").unwrap();
        assert!(cnf.cyk_member(s, &["type_r", "type"]));
        assert!(!cnf.cyk_member(s, &["type_r"]));
        assert!(cnf.cyk_member(s, &["type_r", "type_r", "type", "type"]));
        assert!(!cnf.cyk_member(s, &["type", "type_r"]));
        assert!(!cnf.cyk_member::<&str>(s, &[]));
        // Unknown terminals are not errors, just underivable.
        assert!(!cnf.cyk_member(s, &["nosuchlabel", "type"]));
    }

    #[test]
    fn enumerate_same_generation_to_length_two() {
        let g = Grammar::parse(SAME_GENERATION).unwrap();
        let expected: BTreeSet<Vec<String>> =
            [word("subClassOf_r subClassOf"), word("type_r type")].into();
        assert_eq!(g.enumerate_language("S", 2).unwrap(), expected);
    }

    #[test]
    fn enumerate_right_linear_unary_language() {
        let g = Grammar::parse("S -> 'a'\nS -> 'a' S").unwrap();
        let expected: BTreeSet<Vec<String>> = [word("a"), word("a a"), word("a a a")].into();
        assert_eq!(g.enumerate_language("S", 3).unwrap(), expected);
    }

    #[test]
    fn enumerate_unproductive_start_is_empty() {
        let g = Grammar::parse("S -> S S\nS -> S 'a'").unwrap();
        assert!(g.enumerate_language("S", 5).unwrap().is_empty());
    }

    #[test]
    fn enumerate_unknown_start_errors() {
        let g = Grammar::parse("S -> 'a'").unwrap();
        assert_eq!(
            g.enumerate_language("T", 3),
            Err(GrammarError::UnknownSymbol("T".into()))
        );
    }
}
