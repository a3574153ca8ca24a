use std::fs;

use persnf_core::barcode::{barcode as compute_barcode, p_persistent_betti, persistent_homology, verify_barcode};
use persnf_core::formats::{
    barcode_to_json, barcode_to_text, parse_complex_text, parse_filtration_text, parse_matrix_text,
    MatrixText, RingSpec,
};
use persnf_core::matrix::{format_matrix, graded_snd_verified};
use persnf_core::persmod::{check_interval_decomposition, from_filtration, rank_map};
use persnf_core::{
    homology as compute_homology, snd as compute_snd, validate_complex, verify_snd, EuclideanDomain, Field,
    Filtration, GradedMatrix, Integers, Matrix, PolyRing, PrimeField, Rationals,
};
use serde_json::{json, Value};

use crate::{BarcodeArgs, BettiArgs, CliError, Common, Format, HomologyArgs, SndArgs};

type Result<T> = std::result::Result<T, CliError>;

fn read(common: &Common) -> Result<String> {
    fs::read_to_string(&common.input)
        .map_err(|e| CliError::Invalid(format!("cannot read {}: {e}", common.input.display())))
}

fn bad_input(common: &Common, e: impl std::fmt::Display) -> CliError {
    CliError::Invalid(format!("{}: {e}", common.input.display()))
}

fn parse_ring(text: &str) -> Result<RingSpec> {
    text.parse().map_err(CliError::Invalid)
}

fn prime(p: u64) -> Result<PrimeField> {
    PrimeField::new(p).map_err(|e| CliError::Invalid(e.to_string()))
}

fn matrix_json<R: EuclideanDomain>(ring: &R, m: &Matrix<R::Elem>) -> Value {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|e| ring.format_elem(e)).collect::<Vec<_>>())
        .collect::<Vec<_>>()
        .into()
}

pub fn snd(args: &SndArgs) -> Result<String> {
    let c = &args.common;
    let mt = parse_matrix_text(&read(c)?).map_err(|e| bad_input(c, e))?;
    if let Some(r) = &c.ring {
        let wanted = parse_ring(r)?;
        if wanted != mt.ring {
            return Err(CliError::Invalid(format!(
                "--ring {wanted} does not match ring {} in the header of {}",
                mt.ring,
                c.input.display()
            )));
        }
    }
    let graded = mt.row_degrees.is_some();
    match mt.ring {
        RingSpec::Z | RingSpec::Q | RingSpec::Zp(_) if graded => Err(CliError::Invalid(
            "rowdeg/coldeg are only meaningful over a polynomial ring".into(),
        )),
        RingSpec::Z => run_snd(&Integers, &mt, c),
        RingSpec::Q => run_snd(&Rationals, &mt, c),
        RingSpec::Zp(p) => run_snd(&prime(p)?, &mt, c),
        RingSpec::Qx => run_poly_snd(&PolyRing::new(Rationals), &mt, c),
        RingSpec::Zpx(p) => run_poly_snd(&PolyRing::new(prime(p)?), &mt, c),
    }
}

fn run_poly_snd<F: Field>(ring: &PolyRing<F>, mt: &MatrixText, c: &Common) -> Result<String> {
    if mt.row_degrees.is_none() {
        return run_snd(ring, mt, c);
    }
    let a = mt.matrix(ring).map_err(|e| bad_input(c, e))?;
    let rd = mt.row_degrees.clone().unwrap_or_default();
    let cd = mt.col_degrees.clone().unwrap_or_default();
    let g = GradedMatrix::new(ring, a.clone(), rd, cd).map_err(|e| bad_input(c, e))?;
    let res = graded_snd_verified(ring, &g).map_err(|e| CliError::Internal(e.to_string()))?;
    if !verify_snd(ring, &a, &res.snd) {
        return Err(CliError::Internal("graded decomposition failed verification".into()));
    }
    let degrees = |d: &[usize]| d.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    match c.format {
        Format::Text => Ok(format!(
            "{}row degrees: {}\ncolumn degrees: {}\nverified: true\n",
            snd_text(ring, mt.ring, &res.snd),
            degrees(&res.new_row_degrees),
            degrees(&res.new_col_degrees)
        )),
        Format::Json => {
            let mut v = snd_json(ring, mt.ring, &res.snd);
            v["row_degrees"] = json!(res.new_row_degrees);
            v["col_degrees"] = json!(res.new_col_degrees);
            Ok(format!("{}\n", serde_json::to_string_pretty(&v).expect("json")))
        }
    }
}

fn run_snd<R: EuclideanDomain>(ring: &R, mt: &MatrixText, c: &Common) -> Result<String> {
    let a = mt.matrix(ring).map_err(|e| bad_input(c, e))?;
    let res = compute_snd(ring, &a);
    if !verify_snd(ring, &a, &res) {
        return Err(CliError::Internal("decomposition failed verification".into()));
    }
    match c.format {
        Format::Text => Ok(format!("{}verified: true\n", snd_text(ring, mt.ring, &res))),
        Format::Json => Ok(format!(
            "{}\n",
            serde_json::to_string_pretty(&snd_json(ring, mt.ring, &res)).expect("json")
        )),
    }
}

fn snd_text<R: EuclideanDomain>(ring: &R, spec: RingSpec, res: &persnf_core::SndResult<R::Elem>) -> String {
    let diag: Vec<String> = res.diagonal.iter().map(|e| ring.format_elem(e)).collect();
    format!(
        "ring: {spec}\nD = diag({})\nrank: {}\nU:\n{}D:\n{}V:\n{}",
        diag.join(", "),
        res.rank,
        format_matrix(ring, &res.u),
        format_matrix(ring, &res.d),
        format_matrix(ring, &res.v),
    )
}

fn snd_json<R: EuclideanDomain>(ring: &R, spec: RingSpec, res: &persnf_core::SndResult<R::Elem>) -> Value {
    json!({
        "ring": spec.to_string(),
        "rank": res.rank,
        "diagonal": res.diagonal.iter().map(|e| ring.format_elem(e)).collect::<Vec<_>>(),
        "U": matrix_json(ring, &res.u),
        "D": matrix_json(ring, &res.d),
        "V": matrix_json(ring, &res.v),
        "verified": true,
    })
}

pub fn homology(args: &HomologyArgs) -> Result<String> {
    let c = &args.common;
    let ct = parse_complex_text(&read(c)?).map_err(|e| bad_input(c, e))?;
    let simplices: Vec<Vec<String>> = ct.simplices.into_iter().map(|(_, s)| s).collect();
    let k = validate_complex(&simplices, ct.order, args.close).map_err(|e| bad_input(c, e))?;
    let spec = parse_ring(c.ring.as_deref().unwrap_or("z"))?;
    match spec {
        RingSpec::Z => run_homology(&Integers, spec, &k, args),
        RingSpec::Q => run_homology(&Rationals, spec, &k, args),
        RingSpec::Zp(p) => run_homology(&prime(p)?, spec, &k, args),
        RingSpec::Qx => run_homology(&PolyRing::new(Rationals), spec, &k, args),
        RingSpec::Zpx(p) => run_homology(&PolyRing::new(prime(p)?), spec, &k, args),
    }
}

fn run_homology<R: EuclideanDomain>(
    ring: &R,
    spec: RingSpec,
    k: &persnf_core::SimplicialComplex,
    args: &HomologyArgs,
) -> Result<String> {
    let top = args.max_dim.unwrap_or_else(|| k.dim().unwrap_or(0));
    if args.common.verify {
        for n in 0..=top as isize + 1 {
            let d = k.boundary_matrix(n, ring);
            if !verify_snd(ring, &d, &compute_snd(ring, &d)) {
                return Err(CliError::Internal(format!("decomposition of boundary {n} failed verification")));
            }
        }
    }
    let groups: Vec<_> = (0..=top).map(|n| compute_homology(k, n as isize, ring)).collect();
    let factors = |h: &persnf_core::HomologyDecomposition<R::Elem>| -> Vec<String> {
        h.invariant_factors.iter().map(|e| ring.format_elem(e)).collect()
    };
    match args.common.format {
        Format::Text => Ok(groups
            .iter()
            .map(|h| format!("H{}: rank {}, torsion [{}]\n", h.dim, h.free_rank, factors(h).join(", ")))
            .collect()),
        Format::Json => {
            let v: Vec<Value> = groups
                .iter()
                .map(|h| json!({"dim": h.dim, "free_rank": h.free_rank, "invariant_factors": factors(h)}))
                .collect();
            Ok(format!(
                "{}\n",
                serde_json::to_string_pretty(&json!({"ring": spec.to_string(), "homology": v})).expect("json")
            ))
        }
    }
}

/// `--field` and `--ring` name the same thing for persistence; they must agree
/// and be a field.
fn persistence_field(field: Option<&str>, c: &Common) -> Result<RingSpec> {
    let spec = match (field, c.ring.as_deref()) {
        (Some(f), Some(r)) => {
            let (f, r) = (parse_ring(f)?, parse_ring(r)?);
            if f != r {
                return Err(CliError::Invalid(format!("--field {f} and --ring {r} disagree")));
            }
            f
        }
        (Some(s), None) | (None, Some(s)) => parse_ring(s)?,
        (None, None) => RingSpec::Q,
    };
    if !spec.is_field() {
        return Err(CliError::Invalid(format!(
            "persistence needs field coefficients (q or z<p>), got {spec}"
        )));
    }
    Ok(spec)
}

fn read_filtration(c: &Common) -> Result<Filtration> {
    let ft = parse_filtration_text(&read(c)?).map_err(|e| bad_input(c, e))?;
    let (filt, warnings) =
        Filtration::from_events(&ft.events, ft.order, c.strict).map_err(|e| bad_input(c, e))?;
    for w in warnings {
        eprintln!("warning: {w}");
    }
    Ok(filt)
}

fn internal(e: impl std::fmt::Display) -> CliError {
    CliError::Internal(e.to_string())
}

pub fn barcode(args: &BarcodeArgs) -> Result<String> {
    let c = &args.common;
    let spec = persistence_field(args.field.as_deref(), c)?;
    let filt = read_filtration(c)?;
    match spec {
        RingSpec::Zp(p) => run_barcode(&prime(p)?, &filt, args),
        _ => run_barcode(&Rationals, &filt, args),
    }
}

fn run_barcode<F: Field>(field: &F, filt: &Filtration, args: &BarcodeArgs) -> Result<String> {
    let bc = compute_barcode(filt, field, args.max_dim).map_err(internal)?;
    if args.common.verify {
        verify_barcode(filt, field, &bc).map_err(internal)?;
        for n in 0..bc.dims.len() {
            let module = from_filtration(filt, n as isize, field);
            if !check_interval_decomposition(field, &module, &bc.intervals(n)) {
                return Err(CliError::Internal(format!(
                    "dim {n} bars disagree with ranks of the persistence module"
                )));
            }
        }
        eprintln!("verified: barcode matches the persistence module ranks");
    }
    match args.common.format {
        Format::Text => Ok(format!("# field: {}\n{}", bc.field, barcode_to_text(&bc))),
        Format::Json => Ok(format!("{}\n", barcode_to_json(field, filt.orientation(), &bc))),
    }
}

pub fn betti(args: &BettiArgs) -> Result<String> {
    let c = &args.common;
    let spec = persistence_field(args.field.as_deref(), c)?;
    let filt = read_filtration(c)?;
    match spec {
        RingSpec::Zp(p) => run_betti(&prime(p)?, &filt, args),
        _ => run_betti(&Rationals, &filt, args),
    }
}

fn run_betti<F: Field>(field: &F, filt: &Filtration, args: &BettiArgs) -> Result<String> {
    let bars = persistent_homology(filt, args.dim as isize, field).map_err(internal)?;
    let end = args
        .t
        .checked_add(args.p)
        .ok_or_else(|| CliError::Invalid("--t plus --p overflows".into()))?;
    let value = p_persistent_betti(&bars, args.t, args.p);
    if args.common.verify {
        let module = from_filtration(filt, args.dim as isize, field);
        let oracle = rank_map(field, &module, args.t, end);
        if oracle != value {
            return Err(CliError::Internal(format!(
                "bars give {value} but the persistence module has rank {oracle}"
            )));
        }
        eprintln!("verified: rank of the induced map agrees");
    }
    match args.common.format {
        Format::Text => Ok(format!("{value}\n")),
        Format::Json => Ok(format!(
            "{}\n",
            json!({"dim": args.dim, "t": args.t, "p": args.p, "betti": value})
        )),
    }
}
