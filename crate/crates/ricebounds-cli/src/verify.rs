//! Cross-representation identity suite: every closed form, bound identity
//! and alternative representation checked against the quadrature oracle.

use ricebounds::special::{bessel_i, bessel_i_half, gaussian_q, marcum_q, HalfIntOrder};
use ricebounds::{
    ilhi, rice, toronto, Error, EvalContext, IlhiParams, RiceParams, TorontoParams,
};

pub struct IdentityReport {
    pub name: &'static str,
    pub max_residual: f64,
    pub threshold: f64,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.max_residual <= self.threshold
    }
}

/// Residual thresholds scale with the configured tolerance so that loose
/// runs (say --tol 1e-4) still judge the quadrature-backed identities
/// against what that tolerance can deliver.
fn scaled(base: f64, rel_tol: f64) -> f64 {
    base.max(50.0 * rel_tol)
}

pub fn run(ctx: &EvalContext) -> Result<Vec<IdentityReport>, Error> {
    let tol = ctx.quad.rel_tol;
    let mut reports = Vec::new();

    let ks = [0.0, 0.3, 0.5, 0.7, 0.9];
    let xs = [0.5, 2.0, 7.0, 20.0, 40.0];

    // integration-by-parts identity against the defining integral
    let mut worst = 0.0f64;
    for &k in &ks {
        for &x in &xs {
            let p = RiceParams::new(k, x)?;
            let lhs = rice::ie_quad(p, &ctx.quad)?.value;
            let rhs = rice::ie_lemma1_rhs(p, &ctx.quad)?.value;
            worst = worst.max((lhs - rhs).abs());
        }
    }
    reports.push(IdentityReport {
        name: "parts identity vs oracle (rice)",
        max_residual: worst,
        threshold: scaled(1e-10, tol),
    });

    // the two first-order Marcum forms against each other and the oracle
    let mut worst_pair = 0.0f64;
    let mut worst_quad = 0.0f64;
    for &k in &ks {
        for &x in &xs {
            let p = RiceParams::new(k, x)?;
            let m5 = rice::ie_marcum5(p, &ctx.quad)?.value;
            let m6 = rice::ie_marcum6(p, &ctx.quad)?.value;
            let q = rice::ie_quad(p, &ctx.quad)?.value;
            worst_pair = worst_pair.max((m5 - m6).abs());
            worst_quad = worst_quad.max((m5 - q).abs().max((m6 - q).abs()));
        }
    }
    reports.push(IdentityReport {
        name: "marcum5 vs marcum6 (rice)",
        max_residual: worst_pair,
        threshold: scaled(1e-10, tol),
    });
    reports.push(IdentityReport {
        name: "marcum forms vs oracle (rice)",
        max_residual: worst_quad,
        threshold: scaled(1e-9, tol),
    });

    // trigonometric representation
    let mut worst = 0.0f64;
    for &k in &ks {
        for &x in &xs {
            let p = RiceParams::new(k, x)?;
            let alt = rice::ie_alt_integral(p, &ctx.quad)?.value;
            let q = rice::ie_quad(p, &ctx.quad)?.value;
            worst = worst.max((alt - q).abs());
        }
    }
    reports.push(IdentityReport {
        name: "alt-integral vs oracle (rice)",
        max_residual: worst,
        threshold: scaled(1e-9, tol),
    });

    // half-order Marcum closed form
    let mut worst = 0.0f64;
    for (a, b) in [(0.5, 1.0), (1.0, 2.0), (2.0, 1.0), (3.0, 0.5)] {
        let by_quad = marcum_q(0.5, a, b, &ctx.quad)?.value;
        let closed = gaussian_q(b + a) + gaussian_q(b - a);
        worst = worst.max((by_quad - closed).abs());
    }
    reports.push(IdentityReport {
        name: "half-order Marcum identity",
        max_residual: worst,
        threshold: scaled(1e-10, tol),
    });

    // Toronto-to-Marcum special case at n = (m-1)/2
    let mut worst = 0.0f64;
    for m in [1.0, 2.0, 3.0] {
        for r in [0.5, 1.0, 2.0] {
            for b in [0.5, 1.0, 2.0] {
                let lhs = toronto::toronto_marcum_case(m, r, b, &ctx.quad)?.value;
                let p = TorontoParams::new(m, (m - 1.0) / 2.0, r, b)?;
                let rhs = toronto::toronto_quad(p, &ctx.quad)?.value;
                worst = worst.max((lhs - rhs).abs());
            }
        }
    }
    reports.push(IdentityReport {
        name: "Marcum special case vs oracle (toronto)",
        max_residual: worst,
        threshold: scaled(1e-9, tol),
    });

    // Toronto closed form
    let mut worst = 0.0f64;
    for (m, n) in [(1.0, 0.5), (2.0, 0.5), (3.0, 1.5), (3.0, 2.5), (1.0, 1.5)] {
        for r in [0.25, 1.0, 4.0] {
            for b in [0.5, 2.0] {
                let p = TorontoParams::new(m, n, r, b)?;
                let c = toronto::toronto_closed(p)?.value;
                let q = toronto::toronto_quad(p, &ctx.quad)?.value;
                worst = worst.max(((c - q) / q).abs());
            }
        }
    }
    reports.push(IdentityReport {
        name: "closed form vs oracle (toronto)",
        max_residual: worst,
        threshold: scaled(1e-9, tol),
    });

    // ILHI closed form
    let mut worst = 0.0f64;
    for (m, n) in [(1.0, 0.5), (2.0, 1.5), (3.0, 2.5)] {
        for a in [1.5, 3.0] {
            for z in [0.5, 2.0, 10.0] {
                let p = IlhiParams::new(m, n, a, z)?;
                let c = ilhi::ilhi_closed(p)?.value;
                let q = ilhi::ilhi_quad(p, &ctx.quad)?.value;
                worst = worst.max(((c - q) / q).abs());
            }
        }
    }
    reports.push(IdentityReport {
        name: "closed form vs oracle (ilhi)",
        max_residual: worst,
        threshold: scaled(1e-9, tol),
    });

    // half-integer Bessel closed form against the ascending series
    let mut worst = 0.0f64;
    for twice in [1, 3, 5, 7] {
        for x in [0.1, 1.0, 5.0, 20.0] {
            let closed = bessel_i_half(HalfIntOrder::new(twice)?, x)?;
            let series = bessel_i(twice as f64 / 2.0, x)?;
            worst = worst.max(((closed - series) / series).abs());
        }
    }
    reports.push(IdentityReport {
        name: "half-integer Bessel closed form vs series",
        max_residual: worst,
        threshold: 1e-10,
    });

    Ok(reports)
}
