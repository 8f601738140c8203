//! Flag-value parsers: the complex literal grammar, grid geometry, and the
//! key=value tolerance file.

use num_complex::Complex64;

/// Grammar: `[-]ddd[.ddd][e(+|-)dd]` optionally followed by an imaginary
/// term `(+|-)ddd[.ddd][e(+|-)dd]i`; a bare `i` coefficient means 1.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t = s.trim();
    if t.is_empty() {
        return Err("empty complex literal".into());
    }
    if t.contains(char::is_whitespace) {
        return Err(format!("whitespace inside complex literal `{t}`"));
    }
    // the term separator is a sign that does not follow an exponent marker
    let bytes = t.as_bytes();
    let mut split = None;
    for i in 1..bytes.len() {
        if matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E') {
            if split.is_some() {
                return Err(format!("more than one term separator in `{t}`"));
            }
            split = Some(i);
        }
    }
    match split {
        None => match t.strip_suffix('i') {
            Some(coef) => Ok(Complex64::new(0.0, parse_unit_coef(coef, t)?)),
            None => Ok(Complex64::new(parse_real(t)?, 0.0)),
        },
        Some(i) => {
            let re = parse_real(&t[..i])?;
            let Some(coef) = t[i..].strip_suffix('i') else {
                return Err(format!("imaginary term of `{t}` must end in i"));
            };
            Ok(Complex64::new(re, parse_unit_coef(coef, t)?))
        }
    }
}

fn parse_unit_coef(coef: &str, whole: &str) -> Result<f64, String> {
    match coef {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => parse_real(coef).map_err(|_| format!("bad imaginary coefficient in `{whole}`")),
    }
}

fn parse_real(s: &str) -> Result<f64, String> {
    // digit-class bytes only, which rejects inf/nan spellings up front
    let shape_ok = !s.is_empty()
        && s.bytes()
            .all(|c| matches!(c, b'0'..=b'9' | b'+' | b'-' | b'.' | b'e' | b'E'));
    if !shape_ok {
        return Err(format!("bad number `{s}`"));
    }
    s.parse::<f64>().map_err(|_| format!("bad number `{s}`"))
}

pub(crate) fn parse_window(s: &str) -> Result<(f64, f64, f64, f64), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(format!("window must be x0,x1,y0,y1, got `{s}`"));
    }
    let mut v = [0.0; 4];
    for (slot, p) in v.iter_mut().zip(&parts) {
        *slot = p
            .trim()
            .parse::<f64>()
            .map_err(|_| format!("bad window bound `{p}`"))?;
        if !slot.is_finite() {
            return Err(format!("window bound `{p}` is not finite"));
        }
    }
    if !(v[0] < v[1] && v[2] < v[3]) {
        return Err(format!("window needs x0 < x1 and y0 < y1, got `{s}`"));
    }
    Ok((v[0], v[1], v[2], v[3]))
}

pub(crate) fn parse_resolution(s: &str) -> Result<(usize, usize), String> {
    let Some((w, h)) = s.split_once('x') else {
        return Err(format!("resolution must be WxH, got `{s}`"));
    };
    let w: usize = w.parse().map_err(|_| format!("bad width `{w}`"))?;
    let h: usize = h.parse().map_err(|_| format!("bad height `{h}`"))?;
    if w < 2 || h < 2 {
        return Err(format!("resolution must be at least 2x2, got `{s}`"));
    }
    Ok((w, h))
}

pub(crate) fn parse_n_list(s: &str) -> Result<Vec<u32>, String> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|_| format!("bad N value `{p}`"))
        })
        .collect()
}

/// Tolerance overrides from a --config file; flags still win over these.
#[derive(Clone, Copy, Default)]
pub struct Tolerances {
    pub quad_tol: Option<f64>,
    pub zero_tol: Option<f64>,
}

/// key=value lines, # comments, blank lines; keys quad_tol and zero_tol.
pub fn parse_config_file(path: &str) -> Result<Tolerances, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
    let mut t = Tolerances::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, val)) = line.split_once('=') else {
            return Err(format!("{path}:{}: expected key=value", idx + 1));
        };
        let val: f64 = val
            .trim()
            .parse()
            .map_err(|_| format!("{path}:{}: bad value `{}`", idx + 1, val.trim()))?;
        if !(val.is_finite() && val > 0.0) {
            return Err(format!("{path}:{}: tolerance must be positive", idx + 1));
        }
        match key.trim() {
            "quad_tol" => t.quad_tol = Some(val),
            "zero_tol" => t.zero_tol = Some(val),
            other => return Err(format!("{path}:{}: unknown key `{other}`", idx + 1)),
        }
    }
    Ok(t)
}
