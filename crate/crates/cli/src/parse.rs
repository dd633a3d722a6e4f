//! Parsers for the small argument languages: pairs, partitions, orders, algebras.

use std::path::Path;

use malcev_core::{corpus, FiniteAlgebra, Partition};

/// A bundled algebra by name, or an algebra JSON file.
pub fn load_algebra(source: &str) -> Result<FiniteAlgebra, String> {
    if Path::new(source).is_file() {
        let text = std::fs::read_to_string(source).map_err(|e| format!("{source}: {e}"))?;
        return FiniteAlgebra::from_json(&text).map_err(|e| format!("{source}: {e}"));
    }
    corpus::bundled()
        .into_iter()
        .find(|a| a.name() == source)
        .ok_or_else(|| format!("`{source}` is neither a file nor a bundled algebra"))
}

/// `0:2,1:3`; the empty string is no pairs.
pub fn parse_pairs(text: &str) -> Result<Vec<(usize, usize)>, String> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let (a, b) = t
                .split_once(':')
                .ok_or_else(|| format!("pair `{t}` is not of the form a:b"))?;
            Ok((parse_usize(a)?, parse_usize(b)?))
        })
        .collect()
}

/// Comma-separated numbers, such as a direction order or a seed list.
pub fn parse_list(text: &str) -> Result<Vec<usize>, String> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(parse_usize)
        .collect()
}

fn parse_usize(t: &str) -> Result<usize, String> {
    t.trim()
        .parse()
        .map_err(|_| format!("`{t}` is not a natural number"))
}

/// Splits at commas outside brackets.
fn top_level_tokens(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in text.chars() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    out.push(cur);
    out.into_iter()
        .map(|t| t.trim().to_string())
        .filter(|t| !t.is_empty())
        .collect()
}

/// `full`, `id` or a block list like `[[0,2],[1,3]]`, comma-separated. A
/// single token is repeated `arity` times.
pub fn parse_thetas(text: &str, n: usize, arity: usize) -> Result<Vec<Partition>, String> {
    let tokens = top_level_tokens(text);
    let parsed: Vec<Partition> = tokens
        .iter()
        .map(|t| match t.as_str() {
            "full" => Ok(Partition::full(n)),
            "id" => Ok(Partition::identity(n)),
            blocks => {
                let b: Vec<Vec<usize>> = serde_json::from_str(blocks)
                    .map_err(|_| format!("`{blocks}` is not full, id or a block list"))?;
                Partition::from_blocks(n, &b).map_err(|e| e.to_string())
            }
        })
        .collect::<Result<_, String>>()?;
    match parsed.len() {
        0 => Err("no congruences given".into()),
        1 => Ok(vec![parsed[0].clone(); arity]),
        m if m == arity => Ok(parsed),
        m => Err(format!("{m} congruences given for arity {arity}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs() {
        assert_eq!(parse_pairs("0:2, 1:3").unwrap(), vec![(0, 2), (1, 3)]);
        assert!(parse_pairs("").unwrap().is_empty());
        assert!(parse_pairs("0-2").is_err());
        assert!(parse_pairs("0:x").is_err());
    }

    #[test]
    fn thetas() {
        let t = parse_thetas("full,[[0,2],[1,3]]", 4, 2).unwrap();
        assert!(t[0].is_full());
        assert_eq!(t[1].blocks(), vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(parse_thetas("id", 3, 3).unwrap().len(), 3);
        assert!(parse_thetas("full,full,full", 3, 2).is_err());
        assert!(parse_thetas("[[0,9]]", 3, 2).is_err());
        assert!(parse_thetas("half", 3, 2).is_err());
    }

    #[test]
    fn algebras() {
        assert_eq!(load_algebra("z4").unwrap().size(), 4);
        assert!(load_algebra("no-such-algebra").is_err());
    }
}
