use std::collections::HashMap;
use std::fmt::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::{all_subsets, BitSet};
use crate::lang::io::{dfa_dot, monoid_table_text, morphism_dot, DfaJson, MonoidJson, MorphismJson};
use crate::lang::{
    product_of, residual_left, residual_right, syntactic_morphism, Alphabet, Dfa, FiniteMonoid, RecognizingMorphism,
    RegularLanguage,
};
use crate::oracle;
use crate::order::io::hasse_dot;
use crate::order::{is_bounded_sublattice, models_of_pairs, theory_of_family, Poset, Quasiorder};
use crate::profinite::{check_with, EqKind, Equation, EquationSet, OmegaTerm};
use crate::resalg::io::{relation_dot, ResAlgJson};
use crate::resalg::{
    audit_residuation_closure, dual_relation, extract_monoid, generate_boolean_subalgebra, generate_residuation_ideal,
    is_functional, FiniteResAlg, Functionality, TernaryRel,
};

use super::schema::*;
use super::{load_all, read_file, resolve_alphabet, to_json, Cli, CliError, Command, Direction, Report, Result, Source};

/// Largest points count accepted by `galois --direction sets`.
const GALOIS_SETS_MAX_POINTS: usize = 16;

pub(crate) fn execute(cli: &Cli) -> Result<Report> {
    let mut report = match &cli.command {
        Command::Synmon { expr, alphabet } => synmon(cli, expr, alphabet.as_deref()),
        Command::Minimize { expr, alphabet } => minimize(cli, expr, alphabet.as_deref()),
        Command::Residual { k, l, alphabet } => residual(cli, k, l, alphabet.as_deref()),
        Command::Dual { langs, alg, alphabet } => dual(cli, langs, alg.as_deref(), alphabet.as_deref()),
        Command::Ideal { gens, ambient, alphabet } => ideal(cli, gens, ambient, alphabet.as_deref()),
        Command::Galois { direction, points, sets, pairs } => {
            galois(cli, *direction, *points, sets.as_deref(), pairs.as_deref())
        }
        Command::Check { eq, lang, alphabet, assign } => check(cli, eq, lang, alphabet.as_deref(), assign),
        Command::Eval { term, monoid, assign } => eval(cli, term, monoid, assign),
        Command::Refine { langs, alphabet } => refine(cli, langs, alphabet.as_deref()),
    }?;
    if cli.verify && report.notes.is_empty() {
        report.notes.push("verify: nothing to check".into());
    }
    Ok(report)
}

/// Largest length `b ≤ cap` with at most `budget` words of length `≤ b`.
fn word_bound(alphabet: &Alphabet, cap: usize, budget: usize) -> usize {
    let k = alphabet.len().max(1);
    let (mut b, mut total, mut layer) = (0, 1usize, 1usize);
    while b < cap {
        layer = layer.saturating_mul(k);
        if total.saturating_add(layer) > budget || alphabet.is_empty() {
            break;
        }
        total += layer;
        b += 1;
    }
    b
}

fn random_words(alphabet: &Alphabet, seed: u64, count: usize, max_len: usize) -> Vec<Vec<usize>> {
    if alphabet.is_empty() {
        return vec![Vec::new()];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(0..=max_len);
            (0..len).map(|_| rng.gen_range(0..alphabet.len())).collect()
        })
        .collect()
}

fn violation(what: &str, word: &[usize], alphabet: &Alphabet) -> CliError {
    let w = if word.is_empty() { "1".to_string() } else { alphabet.decode(word) };
    CliError::Violation(format!("verify: {what} at word {w}"))
}

fn dfa_text(d: &Dfa) -> String {
    let a = d.alphabet();
    let w = d.states().to_string().len().max(1);
    let mut out = String::new();
    writeln!(out, "states: {}, initial: {}, finals: {:?}", d.states(), d.initial(), d.finals()).unwrap();
    write!(out, "    {:>w$} |", "").unwrap();
    for &c in a.symbols() {
        write!(out, " {c:>w$}").unwrap();
    }
    out.push('\n');
    for q in 0..d.states() {
        let mark = match (q == d.initial(), d.is_final(q)) {
            (true, true) => "->*",
            (true, false) => "-> ",
            (false, true) => "  *",
            (false, false) => "   ",
        };
        write!(out, "{mark} {q:>w$} |").unwrap();
        for t in &d.transitions()[q] {
            write!(out, " {t:>w$}").unwrap();
        }
        out.push('\n');
    }
    out
}

fn shortest(l: &RegularLanguage) -> String {
    match l.shortest_word() {
        None => "none (empty language)".into(),
        Some(w) if w.is_empty() => "1".into(),
        Some(w) => l.alphabet().decode(&w),
    }
}

fn synmon(cli: &Cli, expr: &str, alphabet: Option<&str>) -> Result<Report> {
    let src = Source::load(expr)?;
    let a = resolve_alphabet(alphabet, &[&src], &[])?;
    let l = src.language(&a)?;
    let eta = syntactic_morphism(&l);
    let m = eta.monoid();
    let mut text = String::new();
    writeln!(text, "syntactic monoid of {}: {} elements", src.display(), m.len()).unwrap();
    text.push_str(&monoid_table_text(m));
    for (i, &c) in a.symbols().iter().enumerate() {
        writeln!(text, "{c} -> {}", m.label(eta.letter_images()[i])).unwrap();
    }
    let acc: Vec<&str> = eta.accepting().iter().map(|x| m.label(x)).collect();
    writeln!(text, "accepting: {{{}}}", acc.join(", ")).unwrap();
    let mut notes = Vec::new();
    if cli.verify {
        notes.push(verify_synmon(&l, &eta)?);
    }
    Ok(Report {
        text,
        json: to_json(&MorphismJson::from_morphism(&eta)),
        dot: Some(morphism_dot(&eta, "synmon")),
        status: 0,
        notes,
    })
}

/// Words with the same image share their bounded-context behaviour, and the
/// accepting set agrees with membership.
fn verify_synmon(l: &RegularLanguage, eta: &RecognizingMorphism) -> Result<String> {
    let a = l.alphabet();
    let b = word_bound(a, 6, 130);
    let classes = oracle::oracle_syntactic_classes(l, b);
    let mut class_of: HashMap<Vec<usize>, usize> = HashMap::new();
    for (i, c) in classes.iter().enumerate() {
        for w in c {
            class_of.insert(w.clone(), i);
        }
    }
    let mut seen: HashMap<usize, usize> = HashMap::new();
    let accepted: std::collections::HashSet<Vec<usize>> = oracle::oracle_membership(l, b).into_iter().collect();
    for w in oracle::words_up_to(a, b) {
        let m = eta.eval(&w);
        if eta.accepting().contains(m) != accepted.contains(&w) {
            return Err(violation("accepting set disagrees with membership", &w, a));
        }
        let c = class_of[&w];
        if *seen.entry(m).or_insert(c) != c {
            return Err(violation("one monoid element covers two context classes", &w, a));
        }
    }
    Ok(format!("verify: ok, {} words up to length {b} against context enumeration", class_of.len()))
}

fn minimize(cli: &Cli, expr: &str, alphabet: Option<&str>) -> Result<Report> {
    let src = Source::load(expr)?;
    let a = resolve_alphabet(alphabet, &[&src], &[])?;
    let raw = src.raw_dfa(&a)?;
    let l = RegularLanguage::from_dfa(raw.clone());
    let mut text = format!("minimal DFA of {}\n", src.display());
    text.push_str(&dfa_text(l.dfa()));
    let mut notes = Vec::new();
    if cli.verify {
        let b = word_bound(&a, 8, 4096);
        let mut words = oracle::words_up_to(&a, b);
        words.extend(random_words(&a, cli.seed, 256, 16));
        for w in &words {
            if raw.accepts(w) != l.accepts_word(w) {
                return Err(violation("minimal DFA disagrees with the input automaton", w, &a));
            }
        }
        notes.push(format!("verify: ok, {} words (seed {})", words.len(), cli.seed));
    }
    Ok(Report {
        text,
        json: to_json(&DfaJson::from_dfa(l.dfa())),
        dot: Some(dfa_dot(l.dfa(), "minimal")),
        status: 0,
        notes,
    })
}

fn residual(cli: &Cli, k: &str, l: &str, alphabet: Option<&str>) -> Result<Report> {
    let (ks, ls) = (Source::load(k)?, Source::load(l)?);
    let a = resolve_alphabet(alphabet, &[&ks, &ls], &[])?;
    let (kl, ll) = (ks.language(&a)?, ls.language(&a)?);
    let left = residual_left(&kl, &ll)?;
    let right = residual_right(&ll, &kl)?;
    let mut text = String::new();
    writeln!(text, "K\\L (shortest word: {})", shortest(&left)).unwrap();
    text.push_str(&dfa_text(left.dfa()));
    writeln!(text, "\nL/K (shortest word: {})", shortest(&right)).unwrap();
    text.push_str(&dfa_text(right.dfa()));
    let mut notes = Vec::new();
    if cli.verify {
        let b = word_bound(&a, 6, 2048);
        let expect_left = oracle::oracle_residual_left(&kl, &ll, b);
        let expect_right = oracle::oracle_residual_right(&ll, &kl, b);
        for (name, got, want) in [("K\\L", &left, expect_left), ("L/K", &right, expect_right)] {
            let want: std::collections::HashSet<Vec<usize>> = want.into_iter().collect();
            for w in oracle::words_up_to(&a, b) {
                if got.accepts_word(&w) != want.contains(&w) {
                    return Err(violation(&format!("{name} disagrees with the oracle"), &w, &a));
                }
            }
        }
        notes.push(format!("verify: ok, both residuals on all words up to length {b}"));
    }
    let dot = format!("{}{}", dfa_dot(left.dfa(), "left_residual"), dfa_dot(right.dfa(), "right_residual"));
    Ok(Report {
        text,
        json: to_json(&ResidualOutput { left: DfaJson::from_dfa(left.dfa()), right: DfaJson::from_dfa(right.dfa()) }),
        dot: Some(dot),
        status: 0,
        notes,
    })
}

fn point_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("y{i}")).collect()
}

fn relation_table(r: &TernaryRel, names: &[String]) -> String {
    let k = r.points();
    let cells: Vec<Vec<String>> = (0..k)
        .map(|x| {
            (0..k)
                .map(|y| {
                    let outs: Vec<&str> = r.outputs(x, y).iter().map(|&z| names[z].as_str()).collect();
                    if outs.is_empty() {
                        "-".to_string()
                    } else {
                        outs.join(",")
                    }
                })
                .collect()
        })
        .collect();
    let w = cells.iter().flatten().map(|c| c.len()).chain(names.iter().map(|n| n.len())).max().unwrap_or(1);
    let mut out = String::new();
    write!(out, "{:>w$} |", "").unwrap();
    for n in names {
        write!(out, " {n:>w$}").unwrap();
    }
    out.push('\n');
    writeln!(out, "{}", "-".repeat(w + 2 + (w + 1) * k)).unwrap();
    for (x, row) in cells.iter().enumerate() {
        write!(out, "{:>w$} |", names[x]).unwrap();
        for c in row {
            write!(out, " {c:>w$}").unwrap();
        }
        out.push('\n');
    }
    out
}

fn algebra_legend(c: &FiniteResAlg, r: &TernaryRel, names: &[String]) -> String {
    let mut out = String::new();
    if c.is_boolean() {
        writeln!(out, "atoms: {}", c.atom_count()).unwrap();
    } else {
        writeln!(out, "ordered points: {}", r.points()).unwrap();
    }
    for (x, n) in names.iter().enumerate() {
        writeln!(out, "  {n} = {}", r.label(x)).unwrap();
    }
    out
}

fn dual(cli: &Cli, langs: &[String], alg: Option<&str>, alphabet: Option<&str>) -> Result<Report> {
    let mut generators = Vec::new();
    let c = match alg {
        Some(path) => {
            let js: ResAlgJson = serde_json::from_str(&read_file(path)?)?;
            js.to_alg()?
        }
        None => {
            let sources = load_all(langs)?;
            let refs: Vec<&Source> = sources.iter().collect();
            let a = resolve_alphabet(alphabet, &refs, &[])?;
            for s in &sources {
                generators.push(s.language(&a)?);
            }
            generate_boolean_subalgebra(&a, &generators)?
        }
    };
    let r = dual_relation(&c);
    let names = point_names(r.points());
    let functionality = is_functional(&r);
    let extracted = match (&functionality, c.is_boolean()) {
        (Functionality::Functional(_), true) => Some(extract_monoid(&c)?),
        _ => None,
    };
    let mut text = algebra_legend(&c, &r, &names);
    text.push_str("\nrelation R(x, y, z), row x, column y, entries z:\n");
    text.push_str(&relation_table(&r, &names));
    let witness = match &functionality {
        Functionality::Functional(_) => {
            text.push_str("\nfunctional: yes\n");
            None
        }
        Functionality::NotFunctional { x, y, maximal } => {
            let outs: Vec<&str> = maximal.iter().map(|&z| names[z].as_str()).collect();
            writeln!(text, "\nfunctional: no, R({}, {}, _) has maximal outputs {}", names[*x], names[*y], outs.join(", "))
                .unwrap();
            Some(NonFunctionalJson { x: *x, y: *y, maximal: maximal.clone() })
        }
    };
    if let Some(e) = &extracted {
        let m = &e.monoid;
        let renamed = FiniteMonoid::new(names.clone(), m.table().to_vec(), m.identity())?;
        let idem = (0..m.len()).all(|x| m.is_idempotent(x));
        writeln!(
            text,
            "extracted monoid: identity {}, {}{}",
            names[m.identity()],
            if m.is_commutative() { "commutative" } else { "not commutative" },
            if idem { ", idempotent" } else { "" }
        )
        .unwrap();
        text.push_str(&monoid_table_text(&renamed));
    }
    let mut notes = Vec::new();
    if cli.verify {
        notes.push(verify_dual(&c, &r, &generators)?);
    }
    let out = DualOutput {
        algebra: ResAlgJson::from_alg(&c)?,
        atom_labels: (0..r.points()).map(|x| r.label(x).to_string()).collect(),
        functional: functionality.is_functional(),
        witness,
        monoid: extracted.map(|e| MonoidJson::from_monoid(&e.monoid)),
    };
    Ok(Report { text, json: to_json(&out), dot: Some(relation_dot(&r, "dual")), status: 0, notes })
}

/// Atoms match membership profiles in the generators, and every product of
/// words lands in a triple of the relation.
fn verify_dual(c: &FiniteResAlg, r: &TernaryRel, generators: &[RegularLanguage]) -> Result<String> {
    let eta = c.morphism();
    let a = eta.alphabet();
    let b = word_bound(a, 4, 64);
    let words = oracle::words_up_to(a, b);
    let point_of = |m: usize| c.atom_containing(m);
    let mut profile_of_atom: HashMap<usize, Vec<bool>> = HashMap::new();
    for w in &words {
        let profile: Vec<bool> = generators.iter().map(|g| g.accepts_word(w)).collect();
        let atom = c.atom_containing(eta.eval(w));
        if *profile_of_atom.entry(atom).or_insert_with(|| profile.clone()) != profile {
            return Err(violation("one atom holds words with different memberships", w, a));
        }
    }
    let mut by_profile: HashMap<&Vec<bool>, usize> = HashMap::new();
    for (&atom, p) in &profile_of_atom {
        if let Some(other) = by_profile.insert(p, atom) {
            return Err(CliError::Violation(format!("verify: atoms {atom} and {other} have the same memberships")));
        }
    }
    let mut checked = 0;
    {
        for u in &words {
            for v in &words {
                let mut uv = u.clone();
                uv.extend_from_slice(v);
                let (x, y, z) = (point_of(eta.eval(u)), point_of(eta.eval(v)), point_of(eta.eval(&uv)));
                if !r.contains(x, y, z) {
                    return Err(violation("product of words is missing from the relation", &uv, a));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("verify: ok, {} words profiled, {checked} products checked", words.len()))
}

fn ideal(cli: &Cli, gens: &[String], ambient: &[String], alphabet: Option<&str>) -> Result<Report> {
    let mut all: Vec<String> = gens.to_vec();
    all.extend(ambient.iter().cloned());
    let sources = load_all(&all)?;
    let refs: Vec<&Source> = sources.iter().collect();
    let a = resolve_alphabet(alphabet, &refs, &[])?;
    let langs: Vec<RegularLanguage> = sources.iter().map(|s| s.language(&a)).collect::<Result<_>>()?;
    let ms: Vec<RecognizingMorphism> = langs.iter().map(syntactic_morphism).collect();
    let mrefs: Vec<&RecognizingMorphism> = ms.iter().collect();
    let joint = product_of(&a, &mrefs)?;
    let gen_sets: Vec<BitSet> = (0..gens.len()).map(|i| joint.pullback(i, ms[i].accepting())).collect();
    let alg = generate_residuation_ideal(&gen_sets, &joint.joint)?;
    let carrier = alg.carrier()?;
    let labels: Vec<String> = carrier.iter().map(|q| alg.describe(q)).collect();
    let r = dual_relation(&alg);
    let names = point_names(r.points());
    let mut text = format!(
        "residuation ideal in a monoid of {} elements: {} atoms, {} members\n",
        alg.monoid_size(),
        alg.atom_count(),
        carrier.len()
    );
    text.push_str(&algebra_legend(&alg, &r, &names));
    text.push_str("members:\n");
    for l in &labels {
        writeln!(text, "  {l}").unwrap();
    }
    let mut notes = Vec::new();
    if cli.verify {
        notes.push(verify_ideal(&alg, &gen_sets, &carrier)?);
    }
    Ok(Report {
        text,
        json: to_json(&IdealOutput { algebra: ResAlgJson::from_alg(&alg)?, member_labels: labels }),
        dot: Some(relation_dot(&r, "ideal")),
        status: 0,
        notes,
    })
}

/// Closure by direct scan, then residuals by single letters and the empty
/// word computed by the oracle, matched against member languages on short
/// words.
fn verify_ideal(alg: &FiniteResAlg, gens: &[BitSet], carrier: &[BitSet]) -> Result<String> {
    for g in gens {
        if !alg.contains(g) {
            return Err(CliError::Violation(format!("verify: generator {} is not a member", alg.describe(g))));
        }
    }
    if let Some((n, c)) = audit_residuation_closure(alg, 1 << 16)? {
        return Err(CliError::Violation(format!(
            "verify: residuals of {} by {} leave the ideal",
            alg.describe(&c),
            alg.describe(&n)
        )));
    }
    let a = alg.morphism().alphabet();
    let b = word_bound(a, 4, 128);
    let words = oracle::words_up_to(a, b);
    let members: Vec<RegularLanguage> = carrier.iter().take(64).map(|q| alg.language_of(q)).collect();
    let profiles: std::collections::HashSet<Vec<bool>> =
        members.iter().map(|m| words.iter().map(|w| m.accepts_word(w)).collect()).collect();
    let mut divisors = vec![RegularLanguage::word(a, &[])];
    divisors.extend((0..a.len()).map(|i| RegularLanguage::word(a, &[i])));
    let mut checked = 0;
    for m in &members {
        for d in &divisors {
            for got in [oracle::oracle_residual_left(d, m, b), oracle::oracle_residual_right(m, d, b)] {
                let got: std::collections::HashSet<Vec<usize>> = got.into_iter().collect();
                let profile: Vec<bool> = words.iter().map(|w| got.contains(w)).collect();
                if !profiles.contains(&profile) {
                    return Err(CliError::Violation(
                        "verify: an oracle residual matches no member on short words".into(),
                    ));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("verify: ok, closure audited and {checked} oracle residuals matched"))
}

fn parse_sets(text: &str, points: usize) -> Result<Vec<BitSet>> {
    let mut out = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('{')
            .and_then(|r| r.find('}').map(|end| (&r[..end], &r[end + 1..])))
            .ok_or_else(|| CliError::Input(format!("expected a set like {{0,1}} at {rest:?}")))?;
        let mut s = BitSet::empty(points);
        for item in body.0.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            s.insert(parse_point(item, points)?);
        }
        out.push(s);
        rest = body.1.trim_start_matches(|c: char| c.is_whitespace() || c == ';');
    }
    Ok(out)
}

fn parse_point(item: &str, points: usize) -> Result<usize> {
    match item.parse::<usize>() {
        Ok(x) if x < points => Ok(x),
        _ => Err(CliError::Input(format!("{item:?} is not a point below {points}"))),
    }
}

fn parse_pairs(text: &str, points: usize) -> Result<Vec<(usize, usize)>> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let (x, y) = t.split_once("<=").ok_or_else(|| CliError::Input(format!("expected x<=y, got {t:?}")))?;
            Ok((parse_point(x.trim(), points)?, parse_point(y.trim(), points)?))
        })
        .collect()
}

fn set_label(s: &BitSet) -> String {
    let items: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn strict_pairs(q: &Quasiorder) -> Vec<[usize; 2]> {
    q.pairs().into_iter().filter(|(x, y)| x != y).map(|(x, y)| [x, y]).collect()
}

fn galois(cli: &Cli, direction: Direction, points: usize, sets: Option<&str>, pairs: Option<&str>) -> Result<Report> {
    let mut notes = Vec::new();
    let mut text = String::new();
    let (family, q, dot) = match direction {
        Direction::Order => {
            let family = parse_sets(sets.unwrap_or(""), points)?;
            let q = theory_of_family(points, family.iter());
            writeln!(text, "order of {} sets on {points} points (x <= y: every set holding y holds x):", family.len())
                .unwrap();
            let blocks = q.blocks();
            let labels: Vec<String> = blocks
                .iter()
                .map(|b| {
                    let v: Vec<String> = b.iter().map(|x| x.to_string()).collect();
                    if v.len() == 1 {
                        v[0].clone()
                    } else {
                        format!("[{}]", v.join(" "))
                    }
                })
                .collect();
            let poset = Poset::new(
                labels,
                (0..blocks.len())
                    .map(|i| (0..blocks.len()).map(|j| q.related(blocks[i][0], blocks[j][0])).collect())
                    .collect(),
            )?;
            if cli.verify && points <= GALOIS_SETS_MAX_POINTS {
                let closed = models_of_pairs(&all_subsets(points).collect::<Vec<_>>(), &q.pairs());
                if family.iter().any(|s| !closed.contains(s)) || theory_of_family(points, closed.iter()) != q {
                    return Err(CliError::Violation("verify: the closure round trip changed the order".into()));
                }
                notes.push(format!("verify: ok, {} closed sets reproduce the order", closed.len()));
            }
            (family, q, hasse_dot(&poset, "order"))
        }
        Direction::Sets => {
            if points > GALOIS_SETS_MAX_POINTS {
                return Err(CliError::Input(format!("at most {GALOIS_SETS_MAX_POINTS} points for --direction sets")));
            }
            let e = parse_pairs(pairs.unwrap_or(""), points)?;
            let family = models_of_pairs(&all_subsets(points).collect::<Vec<_>>(), &e);
            let q = Quasiorder::closure_of(points, &e);
            writeln!(text, "sets on {points} points closed under {} constraints: {}", e.len(), family.len()).unwrap();
            let poset = Poset::new(
                family.iter().map(set_label).collect(),
                family.iter().map(|s| family.iter().map(|t| s.is_subset(t)).collect()).collect(),
            )?;
            if cli.verify {
                if !is_bounded_sublattice(points, &family) || theory_of_family(points, family.iter()) != q {
                    return Err(CliError::Violation("verify: the closed sets do not give back the closed order".into()));
                }
                notes.push("verify: ok, bounded sublattice with the closed order as theory".into());
            }
            (family, q, hasse_dot(&poset, "sets"))
        }
    };
    let order = strict_pairs(&q);
    text.push_str("sets:\n");
    for s in &family {
        writeln!(text, "  {}", set_label(s)).unwrap();
    }
    text.push_str("order:\n");
    if order.is_empty() {
        text.push_str("  (discrete)\n");
    }
    for [x, y] in &order {
        writeln!(text, "  {x} <= {y}").unwrap();
    }
    let out = GaloisOutput {
        direction: match direction {
            Direction::Order => "order".into(),
            Direction::Sets => "sets".into(),
        },
        points,
        sets: family.iter().map(BitSet::to_vec).collect(),
        order,
    };
    Ok(Report { text, json: to_json(&out), dot: Some(dot), status: 0, notes })
}

fn parse_assignments(items: &[String]) -> Result<Vec<(char, String)>> {
    items
        .iter()
        .map(|item| {
            let (var, value) =
                item.split_once('=').ok_or_else(|| CliError::Input(format!("expected x=value, got {item:?}")))?;
            let mut chars = var.trim().chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => Ok((c, value.trim().to_string())),
                _ => Err(CliError::Input(format!("variable {var:?} must be one character"))),
            }
        })
        .collect()
}

fn check(cli: &Cli, eq: &str, lang: &str, alphabet: Option<&str>, assign: &[String]) -> Result<Report> {
    let assignments = parse_assignments(assign)?;
    let sigma: HashMap<char, OmegaTerm> = assignments
        .iter()
        .map(|(c, v)| Ok((*c, OmegaTerm::parse(v)?)))
        .collect::<Result<_>>()?;
    let (equations, file_alphabet) = if std::path::Path::new(eq).is_file() {
        let set = EquationSet::parse(&read_file(eq)?)?;
        (set.equations, Some(set.alphabet))
    } else {
        (vec![Equation::parse(eq)?], None)
    };
    let src = Source::load(lang)?;
    let a = match (alphabet, &file_alphabet) {
        (None, Some(fa)) => fa.clone(),
        _ => {
            let free: Vec<char> = equations
                .iter()
                .flat_map(|e| e.letters())
                .filter(|c| !sigma.contains_key(c))
                .chain(sigma.values().flat_map(|t| t.letters()))
                .collect();
            resolve_alphabet(alphabet, &[&src], &free)?
        }
    };
    if let Some(fa) = &file_alphabet {
        fa.check_same(&a)?;
    }
    let l = src.language(&a)?;
    let eta = syntactic_morphism(&l);
    let m = eta.monoid();
    let mut verdicts = Vec::new();
    let mut text = String::new();
    for e in &equations {
        let inst = e.substitute(&sigma);
        let v = check_with(&eta, eta.accepting(), &inst)?;
        let mark = |x: usize| if eta.accepting().contains(x) { "accepted" } else { "rejected" };
        let shown = if inst == *e { e.to_string() } else { format!("{e}  [{inst}]") };
        if v.holds {
            writeln!(text, "{shown}: SAT").unwrap();
        } else {
            write!(
                text,
                "{shown}: UNSAT, lhs = {} (#{}, {}), rhs = {} (#{}, {})",
                m.label(v.lhs),
                v.lhs,
                mark(v.lhs),
                m.label(v.rhs),
                v.rhs,
                mark(v.rhs)
            )
            .unwrap();
            if let Some((s, t)) = v.context {
                write!(text, ", context {}·_·{}", m.label(s), m.label(t)).unwrap();
            }
            text.push('\n');
        }
        verdicts.push(VerdictJson {
            equation: e.to_string(),
            instance: inst.to_string(),
            holds: v.holds,
            lhs: v.lhs,
            lhs_label: m.label(v.lhs).to_string(),
            rhs: v.rhs,
            rhs_label: m.label(v.rhs).to_string(),
            context: v.context.map(|(s, t)| [s, t]),
        });
    }
    let satisfied = verdicts.iter().all(|v| v.holds);
    writeln!(text, "satisfied: {}", if satisfied { "yes" } else { "no" }).unwrap();
    let mut notes = Vec::new();
    if cli.verify {
        notes.push(verify_check(&l, &eta, &equations, &sigma, &verdicts)?);
    }
    let out = CheckOutput { morphism: MorphismJson::from_morphism(&eta), verdicts, satisfied };
    Ok(Report { text, json: to_json(&out), dot: None, status: if satisfied { 0 } else { 1 }, notes })
}

fn label_word(alphabet: &Alphabet, label: &str) -> Result<Vec<usize>> {
    if label == "1" {
        Ok(Vec::new())
    } else {
        Ok(alphabet.encode(label)?)
    }
}

/// Re-derives each verdict from membership of representative words in the
/// automaton; for inequalities every context pair of representatives is
/// tried.
fn verify_check(
    l: &RegularLanguage,
    eta: &RecognizingMorphism,
    equations: &[Equation],
    sigma: &HashMap<char, OmegaTerm>,
    verdicts: &[VerdictJson],
) -> Result<String> {
    let a = l.alphabet();
    let m = eta.monoid();
    let reps: Vec<Vec<usize>> = (0..m.len()).map(|x| label_word(a, m.label(x))).collect::<Result<_>>()?;
    for (x, w) in reps.iter().enumerate() {
        if eta.eval(w) != x {
            return Err(violation("element label does not evaluate to its element", w, a));
        }
    }
    for (e, v) in equations.iter().zip(verdicts) {
        let (u, w) = (&reps[v.lhs], &reps[v.rhs]);
        let joined = |s: &[usize], x: &[usize], t: &[usize]| [s, x, t].concat();
        let holds = match e.substitute(sigma).kind {
            EqKind::Arrow => !l.accepts_word(w) || l.accepts_word(u),
            EqKind::Symmetric => l.accepts_word(w) == l.accepts_word(u),
            EqKind::Inequality => reps.iter().all(|s| {
                reps.iter().all(|t| !l.accepts_word(&joined(s, w, t)) || l.accepts_word(&joined(s, u, t)))
            }),
        };
        if holds != v.holds {
            return Err(CliError::Violation(format!("verify: verdict for {} disagrees with membership", v.instance)));
        }
    }
    Ok(format!("verify: ok, {} verdicts re-derived from {} representative words", verdicts.len(), reps.len()))
}

fn eval(cli: &Cli, term: &str, monoid: &str, assign: &[String]) -> Result<Report> {
    let text = read_file(monoid)?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    let (m, eta) = if value.get("monoid").is_some() {
        let js: MorphismJson = serde_json::from_value(value)?;
        let eta = js.to_morphism()?;
        (eta.monoid().clone(), Some(eta))
    } else {
        let js: MonoidJson = serde_json::from_value(value)?;
        (js.to_monoid()?, None)
    };
    let t = OmegaTerm::parse(term)?;
    let mut values: HashMap<char, usize> = HashMap::new();
    for (c, v) in parse_assignments(assign)? {
        let x = match m.labels().iter().position(|l| *l == v) {
            Some(x) => x,
            None => match v.parse::<usize>() {
                Ok(x) if x < m.len() => x,
                _ => return Err(CliError::Input(format!("{v:?} is neither an element label nor an index"))),
            },
        };
        values.insert(c, x);
    }
    let lookup = |c: char| {
        values.get(&c).copied().or_else(|| {
            let eta = eta.as_ref()?;
            eta.alphabet().index_of(c).map(|i| eta.letter_images()[i])
        })
    };
    let x = t.eval(&m, &lookup)?;
    let mut notes = Vec::new();
    if cli.verify {
        let again = eval_by_scan(&t, &m, &lookup)
            .ok_or_else(|| CliError::Violation("verify: scan evaluation found no idempotent power".into()))?;
        if again != x {
            return Err(CliError::Violation(format!("verify: scan evaluation gives {} instead", m.label(again))));
        }
        notes.push("verify: ok, idempotent powers found by scanning agree".into());
    }
    let out = EvalOutput { term: t.to_string(), element: x, label: m.label(x).to_string() };
    Ok(Report { text: format!("{} = {} (#{x})\n", out.term, out.label), json: to_json(&out), dot: None, status: 0, notes })
}

/// Evaluation with `s^w` taken as the first idempotent among `s, s², …, s^|M|`.
fn eval_by_scan(t: &OmegaTerm, m: &FiniteMonoid, lookup: &dyn Fn(char) -> Option<usize>) -> Option<usize> {
    match t {
        OmegaTerm::EmptyWord => Some(m.identity()),
        OmegaTerm::Letter(c) => lookup(*c),
        OmegaTerm::Concat(v) => {
            let mut acc = m.identity();
            for part in v {
                acc = m.table()[acc][eval_by_scan(part, m, lookup)?];
            }
            Some(acc)
        }
        OmegaTerm::OmegaPower(s) => {
            let s = eval_by_scan(s, m, lookup)?;
            let mut p = s;
            for _ in 0..m.len() {
                if m.table()[p][p] == p {
                    return Some(p);
                }
                p = m.table()[p][s];
            }
            None
        }
    }
}

fn refine(cli: &Cli, langs: &[String], alphabet: Option<&str>) -> Result<Report> {
    let sources = load_all(langs)?;
    let refs: Vec<&Source> = sources.iter().collect();
    let a = resolve_alphabet(alphabet, &refs, &[])?;
    let ls: Vec<RegularLanguage> = sources.iter().map(|s| s.language(&a)).collect::<Result<_>>()?;
    let ms: Vec<RecognizingMorphism> = ls.iter().map(syntactic_morphism).collect();
    let mrefs: Vec<&RecognizingMorphism> = ms.iter().collect();
    let joint = product_of(&a, &mrefs)?;
    let jm = joint.joint.monoid();
    let mut text = format!("joint monoid: {} elements from {} factors\n", jm.len(), ms.len());
    text.push_str(&monoid_table_text(jm));
    text.push_str("projections:\n");
    let w = jm.labels().iter().map(|l| l.chars().count()).max().unwrap_or(1);
    for x in 0..jm.len() {
        write!(text, "  {:>w$} ->", jm.label(x)).unwrap();
        for (i, p) in joint.projections.iter().enumerate() {
            write!(text, " {}", ms[i].monoid().label(p[x])).unwrap();
        }
        text.push('\n');
    }
    let acc: Vec<&str> = joint.joint.accepting().iter().map(|x| jm.label(x)).collect();
    writeln!(text, "accepting (all factors): {{{}}}", acc.join(", ")).unwrap();
    let mut notes = Vec::new();
    if cli.verify {
        let b = word_bound(&a, 8, 2048);
        let mut words = oracle::words_up_to(&a, b);
        words.extend(random_words(&a, cli.seed, 256, 12));
        for wd in &words {
            let x = joint.joint.eval(wd);
            for (i, f) in ms.iter().enumerate() {
                if joint.projections[i][x] != f.eval(wd) {
                    return Err(violation(&format!("projection {i} disagrees with its factor"), wd, &a));
                }
            }
            if joint.joint.accepts(wd) != ls.iter().all(|l| l.accepts_word(wd)) {
                return Err(violation("joint acceptance is not the intersection", wd, &a));
            }
        }
        notes.push(format!("verify: ok, {} words (seed {})", words.len(), cli.seed));
    }
    let out = RefineOutput {
        joint: MorphismJson::from_morphism(&joint.joint),
        projections: joint.projections.clone(),
        factors: ms.iter().map(MorphismJson::from_morphism).collect(),
    };
    Ok(Report { text, json: to_json(&out), dot: Some(morphism_dot(&joint.joint, "joint")), status: 0, notes })
}
