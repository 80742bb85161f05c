use std::fmt::Write as _;
use std::fs;

use autocx_core::cache::ComplexityCache;
use autocx_core::census::{
    border_check, census_certificates, loop_bound_check, lq_census, separation_scan, shannon_report, CensusRow,
    MemberCheck,
};
use autocx_core::constructions::{gap_automaton, power_automaton, pumping_automaton, PumpingPlan};
use autocx_core::search::reference::{reference_a_d, reference_a_n, reference_a_ne, REFERENCE_NFA_MAX_LEN};
use autocx_core::search::{complexity, Certificate};
use autocx_core::words::{
    border_structure_find, build_ymk, decode_repeat, encode_repeat, ls1_decompose, ls2_solve, primitive_root, sigma,
    supp, unique_factor_check, RepeatCode, YmkParts,
};
use autocx_core::{Error, Kind, Nfa, Word};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Map, Value};

use crate::{CacheCmd, Check, Command, Construct, Context, Failure, Format, Lengths, Mode, WordsCmd};

/// Runs one command, appending its stdout to `out`. Output already written
/// is kept when the command fails, so partial census rows still reach the
/// caller alongside exit status 2.
pub fn dispatch(ctx: &Context, command: Command, out: &mut String) -> Result<(), Failure> {
    match command {
        Command::Complexity {
            kind,
            certificate,
            words,
        } => complexity_cmd(ctx, kind.into(), certificate, &words, out),
        Command::Census { q, n } => census_cmd(ctx, q, n, out),
        Command::Shannon { q, n } => shannon_cmd(ctx, q, n, out),
        Command::Validate { check, q, n } => validate_cmd(ctx, check, q, n, out),
        Command::Separations { n } => separations_cmd(ctx, n, out),
        Command::Construct(c) => construct_cmd(ctx, c, out),
        Command::Verify { nfa, word, mode } => {
            let text =
                fs::read_to_string(&nfa).map_err(|e| Failure::usage(format!("cannot read {}: {e}", nfa.display())))?;
            verify_cmd(ctx, &Nfa::parse_text(&text)?, &word, mode, out)
        }
        Command::Words(w) => words_cmd(ctx, w, out),
        Command::Cache(c) => cache_cmd(ctx, c, out),
        Command::Selftest { seed, cases, max_len } => selftest_cmd(ctx, seed, cases, max_len, out),
    }
}

fn word(ctx: &Context, s: &str) -> Result<Word, Failure> {
    Ok(Word::parse(s, ctx.alphabet)?)
}

fn certificate_json(cert: &Certificate) -> Value {
    json!({
        "word": cert.word.to_string(),
        "kind": cert.kind.as_str(),
        "value": cert.value,
        "word_count_at_n": cert.word_count_at_n,
        "path_count": cert.path_count,
        "run": cert.run.states(),
        "witness": cert.witness.to_text(),
    })
}

fn push_json(out: &mut String, value: &impl serde::Serialize) -> Result<(), Failure> {
    out.push_str(&serde_json::to_string_pretty(value)?);
    out.push('\n');
    Ok(())
}

fn joined(items: impl IntoIterator<Item = impl ToString>) -> String {
    items.into_iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
}

fn complexity_cmd(
    ctx: &Context,
    kind: Kind,
    certificate: bool,
    words: &[String],
    out: &mut String,
) -> Result<(), Failure> {
    let mut certs = Vec::new();
    for w in words {
        certs.push(complexity(kind, &word(ctx, w)?, &ctx.budget)?);
    }
    match ctx.format_or(Format::Text) {
        Format::Json => push_json(out, &certs.iter().map(certificate_json).collect::<Vec<_>>())?,
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(Vec::new());
            csv.write_record(["word", "kind", "value", "witness"])?;
            for cert in &certs {
                csv.write_record([
                    cert.word.to_string(),
                    cert.kind.to_string(),
                    cert.value.to_string(),
                    cert.witness.to_inline(),
                ])?;
            }
            push_csv(out, csv)?;
        }
        Format::Text => {
            for cert in &certs {
                writeln!(out, "{}", cert.value).unwrap();
                if certificate {
                    writeln!(out, "# {}({}) = {}", cert.kind, cert.word, cert.value).unwrap();
                    writeln!(out, "# words of length {}: {}", cert.word.len(), cert.word_count_at_n).unwrap();
                    writeln!(out, "# accepting runs: {}", cert.path_count).unwrap();
                    writeln!(out, "# run: {}", joined(cert.run.states())).unwrap();
                    out.push_str(&cert.witness.to_text());
                }
            }
        }
    }
    Ok(())
}

fn push_csv(out: &mut String, csv: csv::Writer<Vec<u8>>) -> Result<(), Failure> {
    let bytes = csv.into_inner().map_err(|e| Failure::usage(e.to_string()))?;
    out.push_str(&String::from_utf8(bytes).expect("csv output is utf-8"));
    Ok(())
}

fn unresolved_failure(rows: &[CensusRow]) -> Result<(), Failure> {
    let missing: usize = rows.iter().map(|r| r.unresolved.len()).sum();
    if missing > 0 {
        return Err(Failure::budget(format!(
            "{missing} words ran out of search budget; affected rows are marked authoritative=false"
        )));
    }
    Ok(())
}

fn census_cmd(ctx: &Context, q: autocx_core::RationalQ, n: Lengths, out: &mut String) -> Result<(), Failure> {
    let rows = n
        .range()
        .map(|n| lq_census(n, ctx.alphabet, q, &ctx.budget))
        .collect::<Result<Vec<_>, _>>()?;
    match ctx.format_or(Format::Csv) {
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(Vec::new());
            csv.write_record(CensusRow::CSV_HEADER)?;
            for row in &rows {
                csv.write_record(row.csv_record())?;
            }
            push_csv(out, csv)?;
        }
        Format::Json => push_json(out, &rows)?,
        Format::Text => {
            for row in &rows {
                writeln!(
                    out,
                    "n={} q={} count={}/{} max={} histogram={}{}",
                    row.n,
                    row.q,
                    row.count,
                    row.total,
                    row.max_complexity,
                    row.histogram_string(),
                    if row.authoritative { "" } else { " (incomplete)" }
                )
                .unwrap();
                writeln!(out, "  members: {}", joined(&row.members)).unwrap();
            }
        }
    }
    unresolved_failure(&rows)
}

fn shannon_cmd(ctx: &Context, q: autocx_core::RationalQ, n: Lengths, out: &mut String) -> Result<(), Failure> {
    let report = shannon_report(n.range(), ctx.alphabet, q, &ctx.budget)?;
    let ratio = |r: &num_rational::Ratio<u64>| format!("{}/{}", r.numer(), r.denom());
    match ctx.format_or(Format::Text) {
        Format::Json => push_json(out, &report)?,
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(Vec::new());
            csv.write_record([
                "n",
                "max_complexity",
                "high_fraction",
                "lq_fraction",
                "histogram",
                "authoritative",
            ])?;
            for row in &report.rows {
                let hist = row
                    .histogram
                    .iter()
                    .map(|(v, c)| format!("{v}:{c}"))
                    .collect::<Vec<_>>()
                    .join(";");
                csv.write_record([
                    row.n.to_string(),
                    row.max_complexity.to_string(),
                    ratio(&row.high_fraction),
                    ratio(&row.lq_fraction),
                    hist,
                    row.authoritative.to_string(),
                ])?;
            }
            push_csv(out, csv)?;
        }
        Format::Text => {
            for row in &report.rows {
                writeln!(
                    out,
                    "n={} max={} high={} lq={}",
                    row.n,
                    row.max_complexity,
                    ratio(&row.high_fraction),
                    ratio(&row.lq_fraction)
                )
                .unwrap();
            }
            writeln!(out, "lq fraction decreases: {}", report.lq_fraction_decreases).unwrap();
        }
    }
    if report.rows.iter().any(|r| !r.authoritative) {
        return Err(Failure::budget("some words ran out of search budget"));
    }
    Ok(())
}

fn validate_cmd(
    ctx: &Context,
    check: Check,
    q: autocx_core::RationalQ,
    n: Lengths,
    out: &mut String,
) -> Result<(), Failure> {
    let mut results: Vec<MemberCheck> = Vec::new();
    for n in n.range() {
        let certs = census_certificates(n, ctx.alphabet, &ctx.budget)?;
        results.push(match check {
            Check::Loops => loop_bound_check(n, ctx.alphabet, q, &certs)?,
            Check::Borders => border_check(n, ctx.alphabet, q, &certs)?,
        });
    }
    match ctx.format_or(Format::Text) {
        Format::Json => push_json(out, &results)?,
        _ => {
            for r in &results {
                writeln!(
                    out,
                    "n={} q={} members={} passed={}{}",
                    r.n,
                    r.q,
                    r.members,
                    r.passed,
                    if r.authoritative { "" } else { " (incomplete)" }
                )
                .unwrap();
                for f in &r.failures {
                    writeln!(out, "  failed: {f}").unwrap();
                }
            }
        }
    }
    let failed: usize = results.iter().map(|r| r.failures.len()).sum();
    if failed > 0 {
        return Err(Failure::usage(format!("{failed} members failed the check")));
    }
    if results.iter().any(|r| !r.authoritative) {
        return Err(Failure::budget("some words ran out of search budget"));
    }
    Ok(())
}

fn separations_cmd(ctx: &Context, n: Lengths, out: &mut String) -> Result<(), Failure> {
    let hits = separation_scan(n.range(), ctx.alphabet, &ctx.budget)?;
    match ctx.format_or(Format::Text) {
        Format::Json => {
            let rows: Vec<Value> = hits
                .iter()
                .map(|h| {
                    json!({
                        "word": h.word.to_string(),
                        "ane": certificate_json(&h.ane),
                        "an": certificate_json(&h.an),
                        "reference_confirmed": h.reference_confirmed,
                    })
                })
                .collect();
            push_json(out, &rows)?;
        }
        _ => {
            for h in &hits {
                writeln!(
                    out,
                    "{} ane={} an={} confirmed={}",
                    h.word, h.ane.value, h.an.value, h.reference_confirmed
                )
                .unwrap();
            }
        }
    }
    Ok(())
}

fn emit_construction(ctx: &Context, report: Value, nfa: Option<&Nfa>, out: &mut String) -> Result<(), Failure> {
    match ctx.format_or(Format::Text) {
        Format::Json => {
            let mut report = report;
            report["nfa"] = nfa.map_or(Value::Null, |a| Value::String(a.to_text()));
            push_json(out, &report)?;
        }
        _ => {
            if let Value::Object(map) = &report {
                for (key, value) in map {
                    writeln!(out, "# {key}: {}", plain(value)).unwrap();
                }
            }
            match nfa {
                Some(a) => out.push_str(&a.to_text()),
                None => writeln!(out, "# not built: more than 64 states").unwrap(),
            }
        }
    }
    Ok(())
}

fn plain(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(plain).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn construct_cmd(ctx: &Context, c: Construct, out: &mut String) -> Result<(), Failure> {
    match c {
        Construct::Power { word: w } => {
            let x = word(ctx, &w)?;
            let nfa = power_automaton(&x)?;
            let (root, exponent) = primitive_root(&x)?;
            let report = json!({
                "word": x.to_string(),
                "root": root.to_string(),
                "exponent": exponent,
                "states": nfa.num_states(),
                "exact": nfa.is_exact_acceptor(&x)?,
            });
            emit_construction(ctx, report, Some(&nfa), out)
        }
        Construct::Gap { word: w, q, c } => {
            let x = word(ctx, &w)?;
            let c = c.unwrap_or(supp(&x) + 1);
            let (nfa, plan) = gap_automaton(&x, q, c)?;
            emit_construction(ctx, serde_json::to_value(&plan)?, nfa.as_ref(), out)
        }
        Construct::Pump { u, v, w, a, b, q, m } => {
            let plan = PumpingPlan::new(
                word(ctx, &u)?,
                word(ctx, &v)?,
                word(ctx, &w)?,
                word(ctx, &a)?,
                word(ctx, &b)?,
                q,
                m,
            )?;
            let (x, nfa, report) = pumping_automaton(&plan)?;
            let mut value = serde_json::to_value(&report)?;
            value["word"] = Value::String(x.to_string());
            emit_construction(ctx, value, Some(&nfa), out)
        }
    }
}

fn verify_cmd(ctx: &Context, nfa: &Nfa, w: &str, mode: Mode, out: &mut String) -> Result<(), Failure> {
    let x = Word::parse(w, nfa.alphabet_size())?;
    let accepted = nfa.accepts_word(&x)?;
    let words = nfa.count_accepted_words(x.len(), u64::MAX)?;
    let paths = nfa.count_accepting_paths(&x, u64::MAX)?;
    let verdict = match mode {
        Mode::Exact => nfa.is_exact_acceptor(&x)?,
        Mode::Unique => nfa.is_unique_acceptor(&x)?,
    };
    let label = match mode {
        Mode::Exact => "exact",
        Mode::Unique => "unique",
    };
    match ctx.format_or(Format::Text) {
        Format::Json => push_json(
            out,
            &json!({
                label: verdict,
                "accepts": accepted,
                "words_of_length": words,
                "accepting_runs": paths,
                "states": nfa.num_states(),
            }),
        )?,
        _ => {
            writeln!(out, "{label}: {verdict}").unwrap();
            writeln!(out, "accepts: {accepted}").unwrap();
            writeln!(out, "words of length {}: {words}", x.len()).unwrap();
            writeln!(out, "accepting runs: {paths}").unwrap();
        }
    }
    Ok(())
}

fn emit_fields(ctx: &Context, fields: Map<String, Value>, out: &mut String) -> Result<(), Failure> {
    match ctx.format_or(Format::Text) {
        Format::Json => push_json(out, &Value::Object(fields)),
        _ => {
            for (key, value) in &fields {
                writeln!(out, "{key}: {}", plain(value)).unwrap();
            }
            Ok(())
        }
    }
}

fn fields(value: Value) -> Map<String, Value> {
    match value {
        Value::Object(map) => map,
        _ => unreachable!("field lists are built from objects"),
    }
}

fn words_cmd(ctx: &Context, cmd: WordsCmd, out: &mut String) -> Result<(), Failure> {
    let result = match cmd {
        WordsCmd::Ls1 { x, y } => {
            let (x, y) = (word(ctx, &x)?, word(ctx, &y)?);
            match ls1_decompose(&x, &y) {
                Some((root, i, j)) => json!({"commute": true, "root": root.to_string(), "i": i, "j": j}),
                None => json!({"commute": false}),
            }
        }
        WordsCmd::Ls2 { x, y, z } => {
            let (x, y, z) = (word(ctx, &x)?, word(ctx, &y)?, word(ctx, &z)?);
            match ls2_solve(&x, &y, &z) {
                Some(s) => json!({"solved": true, "u": s.u.to_string(), "v": s.v.to_string(), "e": s.e}),
                None => json!({"solved": false}),
            }
        }
        WordsCmd::Sigma { k } => {
            let s = sigma(k)?;
            json!({"k": k, "length": s.len(), "sigma": s.to_string()})
        }
        WordsCmd::Encode { word: w } => {
            let x = word(ctx, &w)?;
            match encode_repeat(&x) {
                Some(code) => {
                    let encoded = code.to_word();
                    json!({
                        "encoded": true,
                        "code": encoded.to_string(),
                        "code_length": encoded.len(),
                        "word_length": x.len(),
                        "m": code.m,
                    })
                }
                None => json!({"encoded": false, "word_length": x.len()}),
            }
        }
        WordsCmd::Decode { code } => {
            let decoded = decode_repeat(&RepeatCode::from_word(&word(ctx, &code)?)?)?;
            json!({"word": decoded.to_string(), "length": decoded.len()})
        }
        WordsCmd::UniqueFactor { word: w, threshold } => {
            let report = unique_factor_check(&word(ctx, &w)?, threshold)?;
            json!({"ok": report.ok, "longest_repeat": report.longest_repeat, "threshold": threshold})
        }
        WordsCmd::Border { word: w, q } => {
            let x = word(ctx, &w)?;
            match border_structure_find(&x, q)? {
                Some(b) => json!({
                    "found": true,
                    "u": b.u.to_string(),
                    "w": b.w.to_string(),
                    "v": b.v.to_string(),
                    "positions": [b.positions.0, b.positions.1, b.positions.2],
                }),
                None => json!({"found": false}),
            }
        }
        WordsCmd::Supp { word: w } => json!({"supp": supp(&word(ctx, &w)?)}),
        WordsCmd::Root { word: w } => {
            let (root, exponent) = primitive_root(&word(ctx, &w)?)?;
            json!({"root": root.to_string(), "exponent": exponent})
        }
        WordsCmd::Ymk {
            w1,
            w2,
            w3,
            x,
            y,
            x2,
            y2,
            m,
            k,
        } => {
            let parts = YmkParts {
                w1: word(ctx, &w1)?,
                w2: word(ctx, &w2)?,
                w3: word(ctx, &w3)?,
                x: word(ctx, &x)?,
                y: word(ctx, &y)?,
                x2: word(ctx, &x2)?,
                y2: word(ctx, &y2)?,
            };
            let y = build_ymk(&parts, m, k)?;
            json!({"word": y.to_string(), "length": y.len()})
        }
    };
    emit_fields(ctx, fields(result), out)
}

fn load_cache(path: &std::path::Path) -> Result<ComplexityCache, Failure> {
    ComplexityCache::load(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn cache_cmd(ctx: &Context, cmd: CacheCmd, out: &mut String) -> Result<(), Failure> {
    match cmd {
        CacheCmd::Inspect { path, dump } => {
            let path = path
                .or_else(|| ctx.cache_path.clone())
                .ok_or_else(|| Failure::usage("no cache file given (pass a path, --cache or AUTOCX_CACHE)"))?;
            let cache = load_cache(&path)?;
            let mut per_kind = [0usize; 3];
            let mut invalid = Vec::new();
            for (key, _) in cache.entries() {
                per_kind[Kind::ALL.iter().position(|k| *k == key.kind).unwrap()] += 1;
                let checked =
                    Word::parse(&key.word, key.alphabet).and_then(|x| cache.get(&x, key.kind).map(|c| c.is_some()));
                if let Err(e) = checked {
                    invalid.push(format!("{} {}: {e}", key.word, key.kind));
                }
            }
            writeln!(out, "entries: {}", cache.len()).unwrap();
            for (kind, count) in Kind::ALL.iter().zip(per_kind) {
                writeln!(out, "{kind}: {count}").unwrap();
            }
            writeln!(out, "verified: {}", cache.len() - invalid.len()).unwrap();
            for line in &invalid {
                writeln!(out, "invalid: {line}").unwrap();
            }
            if dump {
                out.push_str(&cache.to_tsv());
            }
            if !invalid.is_empty() {
                return Err(Failure::usage(format!(
                    "{} cache entries failed verification",
                    invalid.len()
                )));
            }
            Ok(())
        }
        CacheCmd::Merge { inputs, out: target } => {
            let caches = inputs.iter().map(|p| load_cache(p)).collect::<Result<Vec<_>, _>>()?;
            let merged = ComplexityCache::merge(&caches)?;
            match target {
                Some(path) => fs::write(&path, merged.to_tsv())?,
                None => out.push_str(&merged.to_tsv()),
            }
            Ok(())
        }
    }
}

fn selftest_cmd(ctx: &Context, seed: u64, cases: usize, max_len: usize, out: &mut String) -> Result<(), Failure> {
    if max_len == 0 || max_len > REFERENCE_NFA_MAX_LEN {
        return Err(Failure::usage(format!(
            "--max-len must be between 1 and {REFERENCE_NFA_MAX_LEN}"
        )));
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let budget = ctx.budget.without_cache();
    let mut mismatches = 0;
    for _ in 0..cases {
        let n = rng.gen_range(1..=max_len);
        let symbols: Vec<u8> = (0..n).map(|_| rng.gen_range(0..ctx.alphabet as u8)).collect();
        let x = Word::new(symbols, ctx.alphabet)?;
        let mut line = format!("{x}");
        let mut pairs = vec![
            (
                Kind::Ane,
                complexity(Kind::Ane, &x, &budget)?.value,
                reference_a_ne(&x)?.value,
            ),
            (
                Kind::An,
                complexity(Kind::An, &x, &budget)?.value,
                reference_a_n(&x)?.value,
            ),
        ];
        // the DFA enumeration grows too fast beyond this
        if ctx.alphabet.pow(n as u32) <= 64 {
            pairs.push((
                Kind::Ad,
                complexity(Kind::Ad, &x, &budget)?.value,
                reference_a_d(&x)?.value,
            ));
        }
        for (kind, got, want) in pairs {
            write!(line, " {kind}={got}").unwrap();
            if got != want {
                mismatches += 1;
                write!(line, "(reference {want})").unwrap();
            }
        }
        writeln!(out, "{line}").unwrap();
    }
    writeln!(out, "seed: {seed}").unwrap();
    writeln!(out, "mismatches: {mismatches}").unwrap();
    if mismatches > 0 {
        return Err(Error::Verification(format!("{mismatches} disagreements with the reference")).into());
    }
    Ok(())
}
