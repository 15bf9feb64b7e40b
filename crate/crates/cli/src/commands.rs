use std::fs;

use num_complex::Complex64;
use qeuler_core::identities::{s_sum, SValue};
use qeuler_core::{
    euler_exact, verify_grid, zeta_multi_sum, zeta_single_sum, EulerParams, GridSpec, IdentityName,
    IdentityReport, ZetaQuery,
};
use rayon::prelude::*;

use crate::args::{
    parse_arg, parse_complex, parse_complex_list, parse_float_list, parse_int_list, parse_point,
    EulerArgs, Format, SsumArgs, TableArgs, TableKind, VerifyArgs, ZetaArgs,
};
use crate::output::{Cell, Table};
use crate::CliError;

/// Rendered output plus whether every check passed.
pub struct Rendered {
    pub text: String,
    pub passed: bool,
}

impl Rendered {
    fn ok(text: String) -> Self {
        Self { text, passed: true }
    }
}

pub fn euler(args: &EulerArgs, format: Format) -> Result<Rendered, CliError> {
    let (num, c) = parse_arg(&args.arg)?;
    let p = EulerParams::new(args.n, args.h, args.r, num, c)?;
    let f = euler_exact(&p);
    let mut table = Table::new(["n", "h", "r", "N", "c"]);
    let mut row = vec![Cell::Int(p.n.into()), Cell::Int(p.h), Cell::Int(p.r.into()), Cell::Int(p.arg), Cell::Int(c.into())];
    match &args.at {
        Some(at) => {
            let q0 = parse_point(at)?;
            let v = f.eval(&q0)?;
            table.columns.extend(["at".into(), "value".into()]);
            row.extend([Cell::Rat(q0), Cell::Rat(v)]);
        }
        None => {
            table.columns.push("value".into());
            row.push(Cell::Func(f));
        }
    }
    table.rows.push(row);
    Ok(Rendered::ok(table.render_single(format)?))
}

pub fn ssum(args: &SsumArgs, format: Format) -> Result<Rendered, CliError> {
    check_ssum(args.n, args.i, args.a, args.c)?;
    let f = s_sum(args.n, args.i, args.h, args.r, args.a, args.c);
    let mut table = Table::new(["n", "i", "h", "r", "a", "c"]);
    let mut row: Vec<Cell> = [args.n.into(), args.i.into(), args.h, args.r.into(), args.a.into(), args.c.into()]
        .into_iter()
        .map(Cell::Int)
        .collect();
    match &args.at {
        Some(at) => {
            let q0 = parse_point(at)?;
            let v = f.eval(&q0)?;
            table.columns.extend(["at".into(), "value".into()]);
            row.extend([Cell::Rat(q0), Cell::Rat(v)]);
        }
        None => {
            table.columns.push("value".into());
            row.push(Cell::Func(f));
        }
    }
    table.rows.push(row);
    Ok(Rendered::ok(table.render_single(format)?))
}

fn check_ssum(n: u32, i: u32, a: u32, c: u32) -> Result<(), CliError> {
    if i > n {
        return Err(CliError::Invalid(format!("i = {i} must not exceed n = {n}")));
    }
    if a == 0 || c == 0 {
        return Err(CliError::Invalid("a and c must be at least 1".into()));
    }
    Ok(())
}

pub fn zeta(args: &ZetaArgs, format: Format) -> Result<Rendered, CliError> {
    let z = ZetaQuery { s: parse_complex(&args.s)?, x: args.x, h: args.h, r: args.r, q: args.q, tol: args.tol };
    let t = match args.multi {
        Some(m) => zeta_multi_sum(&z, m)?,
        None => zeta_single_sum(&z)?,
    };
    let mut table = Table::new(["s", "x", "h", "r", "q", "tol", "value", "terms", "tail_bound", "rounding_bound"]);
    table.rows.push(vec![
        Cell::Complex(z.s),
        Cell::Float(z.x),
        Cell::Int(z.h),
        Cell::Int(z.r.into()),
        Cell::Float(z.q),
        Cell::Float(z.tol),
        Cell::Complex(t.value),
        Cell::Int(t.terms as i64),
        Cell::Float(t.tail_bound),
        Cell::Float(t.rounding_bound),
    ]);
    Ok(Rendered::ok(table.render_single(format)?))
}

fn grid_from_flags(args: &VerifyArgs) -> Result<GridSpec, CliError> {
    let name = args
        .identity
        .as_deref()
        .ok_or_else(|| CliError::Invalid("an identity name or --config is required".into()))?;
    let mut spec = GridSpec::new(name.parse::<IdentityName>()?);
    let flags = [
        ("a", &args.a),
        ("b", &args.b),
        ("n", &args.n),
        ("h", &args.h),
        ("dh", &args.dh),
        ("r", &args.r),
        ("x", &args.x),
        ("m", &args.m),
        ("y", &args.y),
    ];
    for (name, value) in flags {
        if let Some(text) = value {
            spec.ranges.insert(name.to_string(), parse_int_list(name, text)?);
        }
    }
    if let Some(s) = &args.s {
        spec.s = parse_complex_list(s)?
            .into_iter()
            .map(|z| SValue::Parts { re: z.re, im: z.im })
            .collect();
    }
    if let Some(q) = &args.q {
        spec.q = parse_float_list("q", q)?;
    }
    spec.tol = args.tol;
    spec.exact = args.exact;
    Ok(spec)
}

fn grid_from_config(args: &VerifyArgs) -> Result<GridSpec, CliError> {
    let path = args.config.as_ref().expect("caller checked --config");
    let inline = [&args.a, &args.b, &args.n, &args.h, &args.dh, &args.r, &args.x, &args.m, &args.y, &args.s, &args.q];
    if inline.iter().any(|v| v.is_some()) || args.tol.is_some() || args.exact {
        return Err(CliError::Invalid("--config cannot be combined with inline grid flags".into()));
    }
    let text = fs::read_to_string(path).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    let spec: GridSpec =
        serde_json::from_str(&text).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    if let Some(name) = &args.identity {
        if name.parse::<IdentityName>()? != spec.identity {
            return Err(CliError::Invalid(format!("identity `{name}` disagrees with the config file")));
        }
    }
    Ok(spec)
}

/// Runs the grid. Points that cannot be evaluated (even moduli, h < r for
/// zeta identities, ...) make the whole run invalid input.
pub fn verify(args: &VerifyArgs, format: Format) -> Result<Rendered, CliError> {
    let spec = if args.config.is_some() { grid_from_config(args)? } else { grid_from_flags(args)? };
    let reports = verify_grid(&spec)?;
    let text = render_reports(&reports, format)?;
    if let Some(err) = reports.iter().find_map(|r| r.error.clone()) {
        return Err(CliError::Rejected { output: text, message: err });
    }
    Ok(Rendered { text, passed: reports.iter().all(IdentityReport::passed) })
}

fn render_reports(reports: &[IdentityReport], format: Format) -> Result<String, CliError> {
    match format {
        Format::Text => {
            let mut out: String = reports.iter().map(|r| format!("{r}\n")).collect();
            let passed = reports.iter().filter(|r| r.passed()).count();
            out += &format!("{passed}/{} passed\n", reports.len());
            Ok(out)
        }
        Format::Json => Ok(serde_json::to_string(reports).expect("reports serialize") + "\n"),
        Format::Csv => {
            let mut params: Vec<&str> = Vec::new();
            for r in reports {
                for (k, _) in &r.params.0 {
                    if !params.contains(k) {
                        params.push(k);
                    }
                }
            }
            let mut table = Table::new(["identity"]);
            table.columns.extend(params.iter().map(|p| p.to_string()));
            table.columns.extend(["lhs", "rhs", "equal", "deviation", "error"].map(String::from));
            for r in reports {
                let mut row = vec![Cell::Text(r.identity.to_string())];
                row.extend(params.iter().map(|p| r.params.get(p).map_or(Cell::Empty, |v| Cell::Text(v.into()))));
                row.push(r.lhs.clone().map_or(Cell::Empty, Cell::from));
                row.push(r.rhs.clone().map_or(Cell::Empty, Cell::from));
                row.push(Cell::Bool(r.equal));
                row.push(Cell::Float(r.deviation));
                row.push(r.error.clone().map_or(Cell::Empty, Cell::Text));
                table.rows.push(row);
            }
            table.render(Format::Csv)
        }
    }
}

fn required<'a>(name: &str, value: &'a Option<String>) -> Result<&'a str, CliError> {
    value.as_deref().ok_or_else(|| CliError::Invalid(format!("--{name} is required for this table")))
}

fn ints(name: &str, value: &Option<String>) -> Result<Vec<i64>, CliError> {
    let mut v = parse_int_list(name, required(name, value)?)?;
    v.sort_unstable();
    v.dedup();
    Ok(v)
}

fn unsigned(name: &str, v: i64) -> Result<u32, CliError> {
    u32::try_from(v).map_err(|_| CliError::Invalid(format!("--{name}: {v} must be a non-negative integer")))
}

fn sorted_floats(name: &str, value: &Option<String>) -> Result<Vec<f64>, CliError> {
    let mut v = parse_float_list(name, required(name, value)?)?;
    v.sort_by(f64::total_cmp);
    v.dedup();
    Ok(v)
}

/// All combinations of the given axes in lexicographic order.
fn product(axes: &[Vec<i64>]) -> Vec<Vec<i64>> {
    axes.iter().fold(vec![Vec::new()], |acc, axis| {
        acc.iter()
            .flat_map(|prefix| {
                axis.iter().map(move |v| {
                    let mut p = prefix.clone();
                    p.push(*v);
                    p
                })
            })
            .collect()
    })
}

pub fn table(args: &TableArgs, format: Format) -> Result<Rendered, CliError> {
    let at = args.at.as_deref().map(parse_point).transpose()?;
    let table = match args.kind {
        TableKind::Euler => {
            let c = if args.c.is_some() { ints("c", &args.c)? } else { vec![1] };
            let axes = [ints("n", &args.n)?, ints("h", &args.h)?, ints("r", &args.r)?, ints("x", &args.x)?, c];
            let points = product(&axes);
            let params = points
                .iter()
                .map(|p| Ok(EulerParams::new(unsigned("n", p[0])?, p[1], unsigned("r", p[2])?, p[3], unsigned("c", p[4])?)?))
                .collect::<Result<Vec<_>, CliError>>()?;
            let mut table = Table::new(["n", "h", "r", "N", "c", "value"]);
            table.rows = params
                .par_iter()
                .map(|p| {
                    let f = euler_exact(p);
                    let value = match &at {
                        Some(q0) => Cell::Rat(f.eval(q0)?),
                        None => Cell::Func(f),
                    };
                    let ints = [p.n.into(), p.h, p.r.into(), p.arg, p.c.into()];
                    let mut row: Vec<Cell> = ints.into_iter().map(Cell::Int).collect();
                    row.push(value);
                    Ok(row)
                })
                .collect::<Result<_, CliError>>()?;
            table
        }
        TableKind::Ssum => {
            let c = if args.c.is_some() { ints("c", &args.c)? } else { vec![1] };
            let axes = [ints("n", &args.n)?, ints("i", &args.i)?, ints("h", &args.h)?, ints("r", &args.r)?, ints("a", &args.a)?, c];
            let mut points = Vec::new();
            for p in product(&axes) {
                let (n, i, r, a, c) =
                    (unsigned("n", p[0])?, unsigned("i", p[1])?, unsigned("r", p[3])?, unsigned("a", p[4])?, unsigned("c", p[5])?);
                if a == 0 || c == 0 {
                    return Err(CliError::Invalid("a and c must be at least 1".into()));
                }
                // Only 0 <= i <= n is meaningful.
                if i <= n {
                    points.push((n, i, p[2], r, a, c));
                }
            }
            let mut table = Table::new(["n", "i", "h", "r", "a", "c", "value"]);
            table.rows = points
                .par_iter()
                .map(|&(n, i, h, r, a, c)| {
                    let f = s_sum(n, i, h, r, a, c);
                    let value = match &at {
                        Some(q0) => Cell::Rat(f.eval(q0)?),
                        None => Cell::Func(f),
                    };
                    let mut row: Vec<Cell> =
                        [n.into(), i.into(), h, r.into(), a.into(), c.into()].into_iter().map(Cell::Int).collect();
                    row.push(value);
                    Ok(row)
                })
                .collect::<Result<_, CliError>>()?;
            table
        }
        TableKind::Zeta => {
            let mut s_values = parse_complex_list(required("s", &args.s)?)?;
            s_values.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
            s_values.dedup();
            let xs = sorted_floats("x", &args.x)?;
            let hs = ints("h", &args.h)?;
            let rs = ints("r", &args.r)?;
            let qs = sorted_floats("q", &args.q)?;
            let mut queries = Vec::new();
            for s in &s_values {
                for &x in &xs {
                    for &h in &hs {
                        for &r in &rs {
                            for &q in &qs {
                                let z = ZetaQuery { s: *s, x, h, r: unsigned("r", r)?, q, tol: args.tol };
                                z.validate()?;
                                queries.push(z);
                            }
                        }
                    }
                }
            }
            let mut table = Table::new(["s", "x", "h", "r", "q", "tol", "value"]);
            table.rows = queries
                .par_iter()
                .map(|z| {
                    let v: Complex64 = zeta_single_sum(z)?.value;
                    Ok(vec![
                        Cell::Complex(z.s),
                        Cell::Float(z.x),
                        Cell::Int(z.h),
                        Cell::Int(z.r.into()),
                        Cell::Float(z.q),
                        Cell::Float(z.tol),
                        Cell::Complex(v),
                    ])
                })
                .collect::<Result<_, CliError>>()?;
            table
        }
    };
    Ok(Rendered::ok(table.render(format)?))
}
