use crate::nullstellensatz::RadicalCertificate;
use crate::poly::print_polynomial;

fn is_atomic(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Wraps `s` in parentheses unless it is a single name or number.
pub(crate) fn paren(s: &str) -> String {
    if is_atomic(s) {
        s.to_string()
    } else {
        format!("({s})")
    }
}

/// Wraps `s` in parentheses if it is a sum or starts with a sign, so it can
/// be used as a factor or after a minus sign. `s` must be normalized text.
pub(crate) fn paren_sum(s: &str) -> String {
    let mut depth = 0i32;
    let mut sum = s.starts_with('-');
    let b = s.as_bytes();
    for i in 0..b.len() {
        match b[i] {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 && i > 0 && b[i - 1] == b' ' => sum = true,
            _ => {}
        }
    }
    if sum {
        format!("({s})")
    } else {
        s.to_string()
    }
}

/// `c * (p)^r = Q_1 * (P_1) + ...`, skipping zero cofactors.
pub(crate) fn render_identity(cert: &RadicalCertificate, target_src: &str, gen_srcs: &[String]) -> String {
    let base = paren(target_src);
    let lhs = if cert.power == 1 {
        format!("{} * {base}", cert.scale)
    } else {
        format!("{} * {base}^{}", cert.scale, cert.power)
    };
    let mut rhs = String::new();
    for (q, src) in cert.cofactors.iter().zip(gen_srcs) {
        if q.is_zero() {
            continue;
        }
        let printed = print_polynomial(q);
        let (negative, text) = match printed.strip_prefix("- ") {
            Some(rest) if q.len() == 1 => (true, rest.to_string()),
            _ if q.len() == 1 => (false, printed),
            _ => (false, format!("({printed})")),
        };
        let piece = format!("{text} * {}", paren(src));
        match (rhs.is_empty(), negative) {
            (true, false) => rhs.push_str(&piece),
            (true, true) => {
                rhs.push('-');
                rhs.push_str(&piece);
            }
            (false, false) => {
                rhs.push_str(" + ");
                rhs.push_str(&piece);
            }
            (false, true) => {
                rhs.push_str(" - ");
                rhs.push_str(&piece);
            }
        }
    }
    if rhs.is_empty() {
        rhs.push('0');
    }
    format!("{lhs} = {rhs}")
}
