use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{check_quiver, rep_form_dr, RepSetup};
use crate::comm::{rank, wedge, CommForm};
use crate::dder::{is_bisymplectic, BisymplecticReport, Verdict};
use crate::forms::{canonical_omega, DrClass};
use crate::{Error, Rational, Result};

/// Coordinates of a sampled point are drawn uniformly from `-SAMPLE_RANGE..=SAMPLE_RANGE`.
pub const SAMPLE_RANGE: i64 = 99;

#[derive(Debug, Clone, Default)]
pub struct KrOptions {
    /// Seed for the sampling point when `Ω` has non-constant coefficients.
    pub seed: u64,
    /// Explicit point, overriding the seed.
    pub point: Option<Vec<Rational>>,
    /// Compare `Ω` with the canonical cotangent form.
    pub check_canonical: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct KrReport {
    pub input: String,
    pub dims: Vec<usize>,
    pub verdict: Verdict,
    pub closed: bool,
    pub bisymplectic: Verdict,
    pub certificate: BisymplecticReport,
    pub rep_closed: bool,
    pub constant_coefficients: bool,
    pub rank: usize,
    pub num_vars: usize,
    pub canonical_match: Option<bool>,
    pub sample_point: Option<Vec<String>>,
    pub notes: Vec<String>,
}

/// `Σ_{α∈Q₁} Σ_{i,j} dx_{α,ij} ∧ dx_{α*,ji}` on the representation space of a double quiver.
pub fn canonical_comm_form(s: &RepSetup) -> Result<CommForm> {
    let q = s.quiver();
    if !q.is_double() {
        return Err(Error::NotDoubled);
    }
    let n = s.num_vars();
    let mut out = CommForm::zero(n, 2);
    for a in 0..q.num_original_arrows() {
        let star = q.star_of(a).expect("double quiver");
        for i in 0..s.dims().get(q.head(a)) {
            for j in 0..s.dims().get(q.tail(a)) {
                let (u, v) = (CommForm::dx(n, s.var(a, i, j)), CommForm::dx(n, s.var(star, j, i)));
                out.add_assign(&wedge(&u, &v)?);
            }
        }
    }
    Ok(out)
}

/// Runs the full check that `ω` induces a symplectic form on the representation space.
pub fn kr_verify(s: &RepSetup, omega: &DrClass, opts: &KrOptions) -> Result<KrReport> {
    check_quiver(s, omega.quiver())?;
    if omega.degree() != 2 {
        return Err(Error::WrongDegree {
            expected: 2,
            found: omega.degree(),
        });
    }
    let n = s.num_vars();
    if let Some(p) = &opts.point {
        if p.len() != n {
            return Err(Error::ArityMismatch(n, p.len()));
        }
    }
    let (cert, big_omega) = crate::par::join(|| is_bisymplectic(omega), || rep_form_dr(s, omega));
    let big_omega = big_omega?;
    let mut notes = Vec::new();

    let (rep_closed, canonical) = crate::par::join(
        || big_omega.d().map(|d| d.is_zero()),
        || {
            let q = s.quiver();
            let wanted = opts.check_canonical || (q.is_double() && canonical_omega(q).is_ok_and(|c| &c == omega));
            if !wanted {
                return Ok(None);
            }
            match canonical_comm_form(s) {
                Ok(c) => Ok(Some(c == big_omega)),
                Err(Error::NotDoubled) => Ok(None),
                Err(e) => Err(e),
            }
        },
    );
    let (rep_closed, canonical_match) = (rep_closed?, canonical?);
    if opts.check_canonical && canonical_match.is_none() {
        notes.push("canonical match skipped: quiver is not a double quiver".into());
    }

    let constant = big_omega.is_constant();
    let (point, sample_point) = if constant {
        (vec![Rational::from_integer(0.into()); n], None)
    } else {
        let p = opts.point.clone().unwrap_or_else(|| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            (0..n)
                .map(|_| Rational::from_integer(rng.gen_range(-SAMPLE_RANGE..=SAMPLE_RANGE).into()))
                .collect()
        });
        let shown = p.iter().map(crate::fmt_rational).collect();
        (p, Some(shown))
    };
    let rank = rank(&big_omega.skew_matrix(&point)?);

    let closed = cert.closed;
    let verdict = if !closed || !rep_closed || canonical_match == Some(false) || cert.verdict == Verdict::No {
        Verdict::No
    } else if rank < n {
        if constant {
            notes.push(format!("constant skew form has rank {rank} < {n}"));
            Verdict::No
        } else {
            notes.push(format!("rank {rank} < {n} at the sampled point; the point may be special"));
            Verdict::Undetermined
        }
    } else if cert.verdict == Verdict::Undetermined {
        Verdict::Undetermined
    } else {
        Verdict::Yes
    };

    Ok(KrReport {
        input: omega.to_string(),
        dims: s.dims().as_slice().to_vec(),
        verdict,
        closed,
        bisymplectic: cert.verdict,
        certificate: cert,
        rep_closed,
        constant_coefficients: constant,
        rank,
        num_vars: n,
        canonical_match,
        sample_point,
        notes,
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl fmt::Display for KrReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<String> = self.dims.iter().map(ToString::to_string).collect();
        writeln!(f, "form:            {}", self.input)?;
        writeln!(f, "dimension:       {}", dims.join(","))?;
        writeln!(f, "closed in DR:    {}", yes_no(self.closed))?;
        writeln!(f, "bi-symplectic:   {} ({})", self.bisymplectic, self.certificate.reason)?;
        writeln!(f, "trace form closed: {}", yes_no(self.rep_closed))?;
        writeln!(f, "skew rank:       {} of {}", self.rank, self.num_vars)?;
        if let Some(m) = self.canonical_match {
            writeln!(f, "canonical match: {}", yes_no(m))?;
        }
        if let Some(p) = &self.sample_point {
            writeln!(f, "sample point:    ({})", p.join(", "))?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        write!(f, "verdict:         {}", self.verdict)
    }
}
