//! Text forms of exact rationals and complex numbers (`a+bi`).

use lgdual::{ComplexRational, Integer, Rational};
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `3`, `-1/2`, `0.25`.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty number".into());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: Integer = p.trim().parse().map_err(|_| format!("bad numerator in `{s}`"))?;
        let q: Integer = q.trim().parse().map_err(|_| format!("bad denominator in `{s}`"))?;
        if q.is_zero() {
            return Err(format!("zero denominator in `{s}`"));
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let neg = whole.trim_start().starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['+', '-']), frac);
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(format!("bad decimal `{s}`"));
        }
        let n: Integer = digits.parse().map_err(|_| format!("bad decimal `{s}`"))?;
        let d = num_traits::pow(Integer::from(10), frac.len());
        let v = Rational::new(n, d);
        return Ok(if neg { -v } else { v });
    }
    let n: Integer = s.parse().map_err(|_| format!("bad number `{s}`"))?;
    Ok(Rational::from_integer(n))
}

/// `1`, `i`, `-2i`, `1/2+3i`, `0.5-i`.
pub fn parse_complex(s: &str) -> Result<ComplexRational, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err("empty number".into());
    }
    let Some(body) = t.strip_suffix('i') else {
        return Ok(ComplexRational::new(parse_rational(&t)?, Rational::zero()));
    };
    // split before the last sign that is not leading
    let split = body.char_indices().skip(1).filter(|&(_, c)| c == '+' || c == '-').map(|(i, _)| i).last();
    let (re, im) = match split {
        Some(i) => (parse_rational(&body[..i])?, &body[i..]),
        None => (Rational::zero(), body),
    };
    let im = match im {
        "" | "+" => Rational::one(),
        "-" => -Rational::one(),
        other => parse_rational(other)?,
    };
    Ok(ComplexRational::new(re, im))
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn format_complex(z: &ComplexRational) -> String {
    let (re, im) = (&z.re, &z.im);
    if im.is_zero() {
        return format_rational(re);
    }
    let im_part = if im.is_one() {
        "i".to_string()
    } else if (-im.clone()).is_one() {
        "-i".to_string()
    } else {
        format!("{}i", format_rational(im))
    };
    if re.is_zero() {
        im_part
    } else if im.is_negative() {
        format!("{}{}", format_rational(re), im_part)
    } else {
        format!("{}+{}", format_rational(re), im_part)
    }
}

/// Floating coefficients in the same `a+bi` form; the shortest decimal that
/// reads back as the same `f64`.
pub fn format_complex_f64(z: Complex64) -> String {
    let f = |v: f64| if v == 0.0 { "0".to_string() } else { format!("{v}") };
    if z.im == 0.0 {
        f(z.re)
    } else if z.re == 0.0 {
        format!("{}i", f(z.im))
    } else if z.im < 0.0 {
        format!("{}{}i", f(z.re), f(z.im))
    } else {
        format!("{}+{}i", f(z.re), f(z.im))
    }
}

pub fn to_complex64(z: &ComplexRational) -> Complex64 {
    Complex64::new(z.re.to_f64().unwrap_or(f64::NAN), z.im.to_f64().unwrap_or(f64::NAN))
}
