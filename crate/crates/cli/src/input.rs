//! Parser for the fibre-product input file format.
//!
//! The file is line-oriented; `#` starts a comment and blank lines are
//! ignored. Generator lines declare alphabets, the remaining lines fill the
//! two structured presentations, the identity sequences, and the optional
//! factor interpretations used by the audit:
//!
//! ```text
//! qgens: x              # quotient generators X (may be empty)
//! agens: a              # first-side kernel generators A
//! bgens: b              # second-side generators B
//! g1gens: s             # first factor generators (audit only)
//! g2gens: u             # second factor generators (audit only)
//! qrel r: x^2           # named quotient relator, word over X
//! v x a +: a^-1         # conjugation word V_{x,a,+1}, word over A
//! v x a -: a^-1
//! u r: a^-1             # relator tail U_r, word over A
//! s3: a^4               # extra first-side relator (repeatable)
//! w r: b^-1             # relator tail W_r over formal conjugates
//! t3: b@(x) b^-1        # extra second-side relation (repeatable)
//! sigma: 1 r + ; x r -  # identity sequence: word, relator, sign
//! i1 x: s               # first-factor image of a generator in A ∪ X
//! i1 a: s^2
//! i2 x: u               # second-factor image of a generator in B ∪ X
//! i2 b: u^2
//! ```
//!
//! A formal-conjugate item is a letter of `B`, an optional `^-1`, and an
//! optional conjugator `@(<word over X>)`; the literal `1` is the empty
//! word of conjugates.

use std::collections::BTreeMap;

use subfree::fibre::{
    ConjWord, FormalConjugate, IdentitySeq, QuotientPres, StructPres1, StructPres2, Theta,
};
use subfree::words::{Alphabet, Sign, SignedLetter, Word};
use subfree::{Error, Result};

pub struct FibreInput {
    pub p1: StructPres1,
    pub p2: StructPres2,
    pub sigmas: Vec<IdentitySeq>,
    pub theta: Option<Theta>,
}

fn parse_sign(tok: &str) -> Result<Sign> {
    match tok {
        "+" => Ok(Sign::Plus),
        "-" => Ok(Sign::Minus),
        other => Err(Error::Parse(format!("expected + or -, got {other:?}"))),
    }
}

fn split_conj_items(text: &str) -> Result<Vec<String>> {
    let mut items = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for ch in text.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| Error::Parse("unbalanced ')' in conjugate word".into()))?;
                cur.push(ch);
            }
            c if c.is_whitespace() && depth == 0 => {
                if !cur.is_empty() {
                    items.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if depth != 0 {
        return Err(Error::Parse("unbalanced '(' in conjugate word".into()));
    }
    if !cur.is_empty() {
        items.push(cur);
    }
    Ok(items)
}

fn parse_conj_word(text: &str, b: &Alphabet, x: &Alphabet) -> Result<ConjWord> {
    let mut out = Vec::new();
    for item in split_conj_items(text)? {
        if item == "1" {
            continue;
        }
        let (base_text, conj_text) = match item.split_once('@') {
            Some((base, conj)) => {
                let inner = conj
                    .strip_prefix('(')
                    .and_then(|s| s.strip_suffix(')'))
                    .ok_or_else(|| {
                        Error::Parse(format!("conjugator in {item:?} must be wrapped in (...)"))
                    })?;
                (base, inner)
            }
            None => (item.as_str(), ""),
        };
        let (name, sign) = match base_text.split_once('^') {
            Some((name, "-1")) => (name, Sign::Minus),
            Some((name, "1")) => (name, Sign::Plus),
            Some((_, exp)) => {
                return Err(Error::Parse(format!(
                    "conjugate base exponent must be 1 or -1, got {exp:?}"
                )))
            }
            None => (base_text, Sign::Plus),
        };
        let index = b
            .index_of(name)
            .ok_or_else(|| Error::Parse(format!("unknown second-side generator {name:?}")))?;
        let conj =
            if conj_text.trim().is_empty() { Word::identity(x) } else { Word::parse(conj_text, x)? };
        out.push(FormalConjugate { base: SignedLetter::new(index, sign), conj });
    }
    Ok(out)
}

fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().filter_map(|line| {
        let line = match line.find('#') {
            Some(pos) => &line[..pos],
            None => line,
        };
        let line = line.trim();
        if line.is_empty() {
            None
        } else {
            Some(line)
        }
    })
}

fn parse_gens(tail: &str) -> Result<Alphabet> {
    let names: Vec<&str> = tail.split_whitespace().collect();
    Alphabet::new(&names)
}

pub fn parse_fibre_file(text: &str) -> Result<FibreInput> {
    // first pass: alphabets
    let mut alphabets: BTreeMap<&str, Alphabet> = BTreeMap::new();
    for line in content_lines(text) {
        let Some((head, tail)) = line.split_once(':') else {
            return Err(Error::Parse(format!("line {line:?} is missing ':'")));
        };
        let key = head.trim();
        if matches!(key, "qgens" | "agens" | "bgens" | "g1gens" | "g2gens") {
            if alphabets.contains_key(key) {
                return Err(Error::Parse(format!("duplicate {key} line")));
            }
            alphabets.insert(key, parse_gens(tail)?);
        }
    }
    let require = |key: &str| -> Result<Alphabet> {
        alphabets
            .get(key)
            .cloned()
            .ok_or_else(|| Error::Parse(format!("missing required {key} line")))
    };
    let x = require("qgens")?;
    let a = require("agens")?;
    let b = require("bgens")?;
    let g1 = alphabets.get("g1gens").cloned();
    let g2 = alphabets.get("g2gens").cloned();

    // second pass: everything else, in file order
    let mut qrels: Vec<(String, Word)> = Vec::new();
    let mut v: BTreeMap<(String, String, Sign), Word> = BTreeMap::new();
    let mut u: BTreeMap<String, Word> = BTreeMap::new();
    let mut s3: Vec<Word> = Vec::new();
    let mut w: BTreeMap<String, ConjWord> = BTreeMap::new();
    let mut t3: Vec<ConjWord> = Vec::new();
    let mut sigma_entries: Vec<Vec<(Word, String, Sign)>> = Vec::new();
    let mut i1: BTreeMap<String, Word> = BTreeMap::new();
    let mut i2: BTreeMap<String, Word> = BTreeMap::new();

    for line in content_lines(text) {
        let (head, tail) = line.split_once(':').expect("checked in first pass");
        let parts: Vec<&str> = head.trim().split_whitespace().collect();
        let tail = tail.trim();
        match parts.as_slice() {
            ["qgens" | "agens" | "bgens" | "g1gens" | "g2gens"] => {}
            ["qrel", name] => qrels.push((name.to_string(), Word::parse(tail, &x)?)),
            ["v", xn, an, sn] => {
                let key = (xn.to_string(), an.to_string(), parse_sign(sn)?);
                if v.insert(key, Word::parse(tail, &a)?).is_some() {
                    return Err(Error::Parse(format!("duplicate v entry on line {line:?}")));
                }
            }
            ["u", name] => {
                if u.insert(name.to_string(), Word::parse(tail, &a)?).is_some() {
                    return Err(Error::Parse(format!("duplicate u entry for {name}")));
                }
            }
            ["s3"] => s3.push(Word::parse(tail, &a)?),
            ["w", name] => {
                if w.insert(name.to_string(), parse_conj_word(tail, &b, &x)?).is_some() {
                    return Err(Error::Parse(format!("duplicate w entry for {name}")));
                }
            }
            ["t3"] => t3.push(parse_conj_word(tail, &b, &x)?),
            ["sigma"] => {
                let mut entries = Vec::new();
                if !tail.is_empty() {
                    for chunk in tail.split(';') {
                        let toks: Vec<&str> = chunk.split_whitespace().collect();
                        if toks.len() < 3 {
                            return Err(Error::Parse(format!(
                                "identity entry {chunk:?} needs word, relator, sign"
                            )));
                        }
                        let sign = parse_sign(toks[toks.len() - 1])?;
                        let name = toks[toks.len() - 2].to_string();
                        let word = Word::parse(&toks[..toks.len() - 2].join(" "), &x)?;
                        entries.push((word, name, sign));
                    }
                }
                sigma_entries.push(entries);
            }
            ["i1", name] => {
                let gamma = g1.as_ref().ok_or_else(|| {
                    Error::Parse("i1 lines need a g1gens declaration".into())
                })?;
                i1.insert(name.to_string(), Word::parse(tail, gamma)?);
            }
            ["i2", name] => {
                let gamma = g2.as_ref().ok_or_else(|| {
                    Error::Parse("i2 lines need a g2gens declaration".into())
                })?;
                i2.insert(name.to_string(), Word::parse(tail, gamma)?);
            }
            _ => return Err(Error::Parse(format!("unrecognized line {line:?}"))),
        }
    }

    let q = QuotientPres::new(x.clone(), qrels)?;
    let p1 = StructPres1::new(q.clone(), a.clone(), &v, &u, s3)?;
    let p2 = StructPres2::new(q.clone(), b.clone(), &w, t3)?;
    let sigmas = sigma_entries
        .into_iter()
        .map(|entries| IdentitySeq::new(&q, entries))
        .collect::<Result<Vec<_>>>()?;
    let theta = match (g1, g2) {
        (Some(gamma1), Some(gamma2)) => {
            Some(Theta::new(&a, &b, &x, &gamma1, &i1, &gamma2, &i2)?)
        }
        _ => None,
    };
    Ok(FibreInput { p1, p2, sigmas, theta })
}
