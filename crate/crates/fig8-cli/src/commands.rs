//! The seven subcommands. Each prints one JSON document to stdout (sorted
//! keys, so reruns are byte-identical) and writes any bulk data to --out.

use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::{json, Value};

use fig8_core::asymptotics_verifier::{convergence_study, predict, Route};
use fig8_core::figure_eight_core::{colored_jones, make_cusp, LogComplex};
use fig8_core::quantum_dilog::{big_f, jones_via_potential, QuadratureSpec};
use fig8_core::region_atlas::{self, RegionLabel, DEFAULT_ZERO_TOL};
use fig8_core::topology_invariants::cs_invariant;

use crate::literal::{parse_complex, parse_config_file, parse_n_list, parse_resolution, parse_window, Tolerances};
use crate::{core_failure, ensure_pool, Failure, Flags, SCHEMA_VERSION};

/// Enum-variant-style names for JSON and CSV labels.
pub(crate) fn label_name(label: RegionLabel) -> &'static str {
    match label {
        RegionLabel::GammaPlus => "GammaPlus",
        RegionLabel::GammaZero => "GammaZero",
        RegionLabel::GammaMinus => "GammaMinus",
        RegionLabel::GammaTildePlus => "GammaTildePlus",
        RegionLabel::GammaTildeZero => "GammaTildeZero",
        RegionLabel::GammaTildeMinus => "GammaTildeMinus",
        RegionLabel::OmegaCapXi => "OmegaCapXi",
        RegionLabel::OmegaBoundary => "OmegaBoundary",
        RegionLabel::OutsideXi => "OutsideXi",
    }
}

fn cjson(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn lcjson(lc: &LogComplex) -> Value {
    json!({ "log_mag": lc.log_mag, "arg": lc.arg })
}

fn print_doc(doc: &Value) {
    println!("{}", serde_json::to_string_pretty(doc).expect("serializable"));
}

fn load_config(flags: &Flags) -> Result<Tolerances, Failure> {
    match flags.optional("config") {
        Some(path) => parse_config_file(path).map_err(Failure::usage),
        None => Ok(Tolerances::default()),
    }
}

fn quad_spec(cfg: &Tolerances) -> QuadratureSpec {
    let mut q = QuadratureSpec::default();
    if let Some(tol) = cfg.quad_tol {
        q.tol = tol;
    }
    q
}

fn flag_xi(flags: &Flags) -> Result<(String, Complex64), Failure> {
    let raw = flags.require("xi")?;
    let xi = parse_complex(raw).map_err(Failure::usage)?;
    Ok((raw.to_string(), xi))
}

fn flag_n(flags: &Flags) -> Result<u32, Failure> {
    let raw = flags.require("n")?;
    let n: u32 = raw
        .parse()
        .map_err(|_| Failure::usage(format!("bad --n value `{raw}`")))?;
    if n == 0 {
        return Err(Failure::usage("--n must be at least 1"));
    }
    Ok(n)
}

const CLASSIFY_HELP: &str = "\
fig8 classify --xi a+bi [--tol T] [--config FILE]

Labels xi with its asymptotic regime and prints the classification
diagnostics. --tol sets the zero-band width (default 1e-9; config key
zero_tol). Non-finite diagnostics exit 3.";

pub(crate) fn classify(args: &[String]) -> Result<(), Failure> {
    let Some(flags) = Flags::parse(args, &["xi", "tol", "config"], CLASSIFY_HELP)? else {
        return Ok(());
    };
    ensure_pool()?;
    let (xi_raw, xi) = flag_xi(&flags)?;
    let cfg = load_config(&flags)?;
    let tol = match flags.optional("tol") {
        Some(raw) => raw
            .parse::<f64>()
            .ok()
            .filter(|t| t.is_finite() && *t > 0.0)
            .ok_or_else(|| Failure::usage(format!("bad --tol value `{raw}`")))?,
        None => cfg.zero_tol.unwrap_or(DEFAULT_ZERO_TOL),
    };
    let (label, d) = region_atlas::classify(xi, tol);
    if d.cosh_a_minus_cos_b.is_nan() || d.tech_condition.is_nan() || d.re_s_over_xi.is_nan() {
        return Err(Failure {
            code: 3,
            msg: format!("classification diagnostics are not finite at xi = {xi}"),
        });
    }
    print_doc(&json!({
        "command": "classify",
        "schema_version": SCHEMA_VERSION,
        "xi": xi_raw,
        "label": label_name(label),
        "conjectural": label.is_conjectural(),
        "diagnostics": {
            "in_xi": d.in_xi,
            "cosh_a_minus_cos_b": d.cosh_a_minus_cos_b,
            "tech_condition": d.tech_condition,
            "re_s_over_xi": d.re_s_over_xi,
        },
    }));
    Ok(())
}

const JONES_HELP: &str = "\
fig8 jones --xi a+bi --n N [--via direct|potential] [--config FILE]

Evaluates J_N at q = exp(xi/N) and prints log-magnitude, argument, and the
plain complex value when it is representable in double precision. The
potential route integrates the quantum dilogarithm (config key quad_tol).";

pub(crate) fn jones(args: &[String]) -> Result<(), Failure> {
    let Some(flags) = Flags::parse(args, &["xi", "n", "via", "config"], JONES_HELP)? else {
        return Ok(());
    };
    ensure_pool()?;
    let (xi_raw, xi) = flag_xi(&flags)?;
    let n = flag_n(&flags)?;
    let cfg = load_config(&flags)?;
    let via = flags.optional("via").unwrap_or("direct");
    let lc = match via {
        "direct" => colored_jones(n, xi),
        "potential" => {
            let quad = quad_spec(&cfg);
            jones_via_potential(n, &make_cusp(xi), &quad).map_err(core_failure)?
        }
        other => return Err(Failure::usage(format!("--via must be direct or potential, got `{other}`"))),
    };
    let value = lc.to_complex();
    let representable = value.re.is_finite() && value.im.is_finite();
    print_doc(&json!({
        "command": "jones",
        "schema_version": SCHEMA_VERSION,
        "xi": xi_raw,
        "n": n,
        "via": via,
        "log_mag": lc.log_mag,
        "arg": lc.arg,
        "value_if_representable": if representable { cjson(value) } else { Value::Null },
    }));
    Ok(())
}

const STUDY_HELP: &str = "\
fig8 study --xi a+bi --n-list N1,N2,... [--via direct|potential]
           [--out FILE.csv] [--config FILE]

Compares exact J_N against the predicted leading term over ascending N
(at least three values) and fits the error order. --out writes the table
as CSV with columns N,exact_logmag,exact_arg,pred_logmag,pred_arg,err.";

pub(crate) fn study(args: &[String]) -> Result<(), Failure> {
    let Some(flags) = Flags::parse(args, &["xi", "n-list", "via", "out", "config"], STUDY_HELP)?
    else {
        return Ok(());
    };
    ensure_pool()?;
    let (xi_raw, xi) = flag_xi(&flags)?;
    let ns = parse_n_list(flags.require("n-list")?).map_err(Failure::usage)?;
    let route = match flags.optional("via").unwrap_or("direct") {
        "direct" => Route::Direct,
        "potential" => Route::Potential,
        other => return Err(Failure::usage(format!("--via must be direct or potential, got `{other}`"))),
    };
    load_config(&flags)?;
    let report = convergence_study(&make_cusp(xi), &ns, route).map_err(core_failure)?;
    let out = flags.optional("out");
    if let Some(path) = out {
        let mut csv = String::from("N,exact_logmag,exact_arg,pred_logmag,pred_arg,err\n");
        for i in 0..report.n_values.len() {
            csv.push_str(&format!(
                "{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
                report.n_values[i],
                report.exact[i].log_mag,
                report.exact[i].arg,
                report.predicted[i].log_mag,
                report.predicted[i].arg,
                report.errors[i],
            ));
        }
        std::fs::write(path, csv)
            .map_err(|e| Failure::usage(format!("cannot write {path}: {e}")))?;
    }
    print_doc(&json!({
        "command": "study",
        "schema_version": SCHEMA_VERSION,
        "xi": xi_raw,
        "route": match route { Route::Direct => "direct", Route::Potential => "potential" },
        "n_values": report.n_values,
        "errors": report.errors,
        "fitted_order": report.fitted_order,
        "conjectural": report.conjectural,
        "csv": out.map_or(Value::Null, |p| Value::String(p.to_string())),
    }));
    Ok(())
}

const PREDICT_HELP: &str = "\
fig8 predict --xi a+bi --n N

Prints the leading asymptotic term for J_N in the regime of xi: growth rate
S/xi, square-rooted torsion, saddle prefactor, and the assembled leading
value in log form, with the conjectural flag for the unproven regimes.";

pub(crate) fn predict_cmd(args: &[String]) -> Result<(), Failure> {
    let Some(flags) = Flags::parse(args, &["xi", "n"], PREDICT_HELP)? else {
        return Ok(());
    };
    ensure_pool()?;
    let (xi_raw, xi) = flag_xi(&flags)?;
    let n = flag_n(&flags)?;
    let p = predict(&make_cusp(xi), n).map_err(core_failure)?;
    print_doc(&json!({
        "command": "predict",
        "schema_version": SCHEMA_VERSION,
        "xi": xi_raw,
        "n": n,
        "regime": label_name(p.regime),
        "conjectural": p.conjectural,
        "growth_rate": cjson(p.growth_rate),
        "torsion_factor": cjson(p.torsion_factor),
        "prefactor": cjson(p.prefactor),
        "leading": lcjson(&p.leading),
    }));
    Ok(())
}

const CS_HELP: &str = "\
fig8 cs --xi a+bi

Chern-Simons invariant of the geometric representation at xi, reduced to
the symmetric mod-pi^2 window in its real part. xi must lie in the
cusp-shape region (or at its corner arcosh(3/2)).";

pub(crate) fn cs(args: &[String]) -> Result<(), Failure> {
    let Some(flags) = Flags::parse(args, &["xi"], CS_HELP)? else {
        return Ok(());
    };
    ensure_pool()?;
    let (xi_raw, xi) = flag_xi(&flags)?;
    let value = cs_invariant(&make_cusp(xi)).map_err(core_failure)?;
    print_doc(&json!({
        "command": "cs",
        "schema_version": SCHEMA_VERSION,
        "xi": xi_raw,
        "cs": cjson(value),
    }));
    Ok(())
}

const GRID_HELP: &str = "\
fig8 grid --xi a+bi --window x0,x1,y0,y1 --resolution WxH
          --quantity ReF|RegionMask|HVMask --out FILE.csv [--config FILE]

Samples a quantity over the window into CSV, row-major with the y loop
outer and ascending; corner coordinates hit the bounds exactly.
  ReF        Re F(z) at fixed xi; header x,y,value (NaN outside the domain)
  RegionMask regime label at xi = x+yi; header x,y,label
  HVMask     half-plane membership signs of z at fixed xi, e.g. +-, 0+;
             na outside the principal strip; header x,y,label";

enum Quantity {
    ReF,
    RegionMask,
    HvMask,
}

fn grid_coord(lo: f64, hi: f64, count: usize, index: usize) -> f64 {
    if index == 0 {
        lo
    } else if index == count - 1 {
        hi
    } else {
        lo + index as f64 * (hi - lo) / (count - 1) as f64
    }
}

fn sign_char(s: i8) -> char {
    match s {
        1 => '+',
        -1 => '-',
        _ => '0',
    }
}

pub(crate) fn grid(args: &[String]) -> Result<(), Failure> {
    let allowed = ["xi", "window", "resolution", "quantity", "out", "config"];
    let Some(flags) = Flags::parse(args, &allowed, GRID_HELP)? else {
        return Ok(());
    };
    ensure_pool()?;
    let (xi_raw, xi) = flag_xi(&flags)?;
    let (x0, x1, y0, y1) = parse_window(flags.require("window")?).map_err(Failure::usage)?;
    let (w, h) = parse_resolution(flags.require("resolution")?).map_err(Failure::usage)?;
    let quantity = match flags.require("quantity")? {
        "ReF" => Quantity::ReF,
        "RegionMask" => Quantity::RegionMask,
        "HVMask" => Quantity::HvMask,
        other => {
            return Err(Failure::usage(format!(
                "--quantity must be ReF, RegionMask, or HVMask, got `{other}`"
            )))
        }
    };
    let out = flags.require("out")?;
    let cfg = load_config(&flags)?;
    let zero_tol = cfg.zero_tol.unwrap_or(DEFAULT_ZERO_TOL);
    let cp = make_cusp(xi);

    let header = match quantity {
        Quantity::ReF => "x,y,value",
        _ => "x,y,label",
    };
    let rows: Vec<String> = (0..h)
        .into_par_iter()
        .map(|j| {
            let y = grid_coord(y0, y1, h, j);
            let mut buf = String::new();
            for i in 0..w {
                let x = grid_coord(x0, x1, w, i);
                let z = Complex64::new(x, y);
                let cell = match quantity {
                    Quantity::ReF => {
                        format!("{:.16e}", big_f(z, &cp).map_or(f64::NAN, |f| f.re))
                    }
                    Quantity::RegionMask => {
                        label_name(region_atlas::classify(z, zero_tol).0).to_string()
                    }
                    Quantity::HvMask => match region_atlas::hv_membership(z, &cp) {
                        Ok((hs, vs)) => [sign_char(hs), sign_char(vs)].iter().collect(),
                        Err(_) => "na".to_string(),
                    },
                };
                buf.push_str(&format!("{:.16e},{:.16e},{}\n", x, y, cell));
            }
            buf
        })
        .collect();
    let mut csv = String::with_capacity(rows.iter().map(String::len).sum::<usize>() + 16);
    csv.push_str(header);
    csv.push('\n');
    for row in &rows {
        csv.push_str(row);
    }
    std::fs::write(out, csv).map_err(|e| Failure::usage(format!("cannot write {out}: {e}")))?;

    print_doc(&json!({
        "command": "grid",
        "schema_version": SCHEMA_VERSION,
        "xi": xi_raw,
        "quantity": flags.require("quantity")?,
        "window": { "x0": x0, "x1": x1, "y0": y0, "y1": y1 },
        "resolution": { "w": w, "h": h },
        "rows": w * h,
        "out": out,
    }));
    Ok(())
}

const SELFTEST_HELP: &str = "\
fig8 selftest

Runs the cross-module invariant suite (principal branches, cusp identities,
quantum dilogarithm functional equation, route agreement, regime partition,
saddle equation, representation relations, Chern-Simons corner value) and
exits 0 only if every check passes.";

pub(crate) fn selftest_cmd(args: &[String]) -> Result<(), Failure> {
    let Some(_flags) = Flags::parse(args, &[], SELFTEST_HELP)? else {
        return Ok(());
    };
    ensure_pool()?;
    crate::selftest::run_all()
}
