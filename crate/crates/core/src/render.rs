//! Text rendering shared by the element types.

use crate::scalar::Scalar;

/// `name^e` factors joined by ` * `, skipping zero exponents.
pub(crate) fn factors(parts: &[(&str, i64)]) -> String {
    parts
        .iter()
        .filter(|(_, e)| *e != 0)
        .map(|(n, e)| if *e == 1 { n.to_string() } else { format!("{n}^{e}") })
        .collect::<Vec<_>>()
        .join(" * ")
}

fn is_atomic(s: &str) -> bool {
    !s.contains(' ') && !s.contains('/')
}

/// Join `coeff * monomial` terms into `a + b - c` form.
pub(crate) fn join_terms<I>(terms: I) -> String
where
    I: IntoIterator<Item = (Scalar, String)>,
{
    let mut out = String::new();
    for (c, mono) in terms {
        let cs = c.to_string();
        let (neg, body) = match cs.strip_prefix('-') {
            Some(rest) if is_atomic(&cs) => (true, rest.to_string()),
            _ => (false, cs.clone()),
        };
        let body = if is_atomic(&body) { body } else { format!("({body})") };
        let text = if mono.is_empty() {
            body
        } else if body == "1" {
            mono
        } else {
            format!("{body} * {mono}")
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&text);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
