//! Small string helpers shared by the template, description and answer parsers.

use alloc::vec::Vec;

/// Matches `text` against a template whose variable slots are written `{}`.
/// Each slot captures the shortest span that lets the following literal
/// match; the final literal must end the text.
pub fn match_template<'a>(template: &str, text: &'a str) -> Option<Vec<&'a str>> {
    let mut parts = template.split("{}");
    let head = parts.next()?;
    let mut rest = text.strip_prefix(head)?;
    let literals: Vec<&str> = parts.collect();
    let mut captures = Vec::with_capacity(literals.len());
    for (i, lit) in literals.iter().enumerate() {
        let last = i + 1 == literals.len();
        let at = if last {
            if lit.is_empty() {
                rest.len()
            } else {
                let at = rest.rfind(lit)?;
                if at + lit.len() != rest.len() {
                    return None;
                }
                at
            }
        } else if lit.is_empty() {
            return None;
        } else {
            rest.find(lit)?
        };
        let (cap, tail) = rest.split_at(at);
        if cap.is_empty() {
            return None;
        }
        captures.push(cap);
        rest = &tail[lit.len()..];
    }
    if literals.is_empty() && !rest.is_empty() {
        return None;
    }
    Some(captures)
}

pub fn parse_u32(s: &str) -> Option<u32> {
    let s = s.trim();
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// `[a, b, c]` → ids; `[]` → empty.
pub fn parse_id_list(s: &str) -> Option<Vec<u32>> {
    let inner = s.trim().strip_prefix('[')?.strip_suffix(']')?;
    if inner.trim().is_empty() {
        return Some(Vec::new());
    }
    inner.split(',').map(parse_u32).collect()
}

/// `[(a, b), (c, d)]` with every tuple of length `arity`.
pub fn parse_tuple_list(s: &str, arity: usize) -> Option<Vec<Vec<u64>>> {
    let inner = s.trim().strip_prefix('[')?.strip_suffix(']')?.trim();
    let mut out = Vec::new();
    let mut rest = inner;
    while !rest.is_empty() {
        let body_start = rest.strip_prefix('(')?;
        let close = body_start.find(')')?;
        let tuple: Vec<u64> = body_start[..close]
            .split(',')
            .map(|x| {
                let x = x.trim();
                if x.is_empty() || !x.bytes().all(|b| b.is_ascii_digit()) {
                    None
                } else {
                    x.parse().ok()
                }
            })
            .collect::<Option<_>>()?;
        if tuple.len() != arity {
            return None;
        }
        out.push(tuple);
        rest = body_start[close + 1..].trim_start();
        if let Some(r) = rest.strip_prefix(',') {
            rest = r.trim_start();
            if rest.is_empty() {
                return None;
            }
        } else if !rest.is_empty() {
            return None;
        }
    }
    Some(out)
}

/// 64-bit FNV-1a, used to derive per-prompt random streams.
pub fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}
