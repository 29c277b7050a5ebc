//! Runtime method registry: every evaluation strategy for the three function
//! families sits behind a common trait and is selected by its method name.
//!
//! The CLI (and anything else that dispatches on strings) goes through these
//! tables; no formula lives outside the family modules.

use crate::error::Result;
use crate::eval::{EvalContext, EvalResult, Method};
use crate::ilhi::{self, IlhiParams};
use crate::rice::{self, RiceParams};
use crate::toronto::{self, TorontoParams};

/// One evaluation strategy for the Rice Ie-function.
pub trait RiceMethod: Send + Sync {
    fn method(&self) -> Method;
    fn eval(&self, p: RiceParams, ctx: &EvalContext) -> Result<EvalResult>;
    fn name(&self) -> &'static str {
        self.method().as_str()
    }
}

/// One evaluation strategy for the incomplete Toronto function.
pub trait TorontoMethod: Send + Sync {
    fn method(&self) -> Method;
    fn eval(&self, p: TorontoParams, ctx: &EvalContext) -> Result<EvalResult>;
    fn name(&self) -> &'static str {
        self.method().as_str()
    }
}

/// One evaluation strategy for the incomplete Lipschitz-Hankel integrals.
pub trait IlhiMethod: Send + Sync {
    fn method(&self) -> Method;
    fn eval(&self, p: IlhiParams, ctx: &EvalContext) -> Result<EvalResult>;
    fn name(&self) -> &'static str {
        self.method().as_str()
    }
}

macro_rules! rice_strategy {
    ($ty:ident, $method:expr, |$p:ident, $ctx:ident| $body:expr) => {
        struct $ty;
        impl RiceMethod for $ty {
            fn method(&self) -> Method {
                $method
            }
            fn eval(&self, $p: RiceParams, $ctx: &EvalContext) -> Result<EvalResult> {
                $body
            }
        }
    };
}

rice_strategy!(RiceQuad, Method::Quadrature, |p, ctx| rice::ie_quad(p, &ctx.quad));
rice_strategy!(RiceAlt, Method::AltIntegral, |p, ctx| rice::ie_alt_integral(p, &ctx.quad));
rice_strategy!(RiceSeries3, Method::Series3, |p, ctx| rice::ie_series3(p, ctx.terms));
rice_strategy!(RiceSeries4, Method::Series4, |p, ctx| rice::ie_series4(p, ctx.terms));
rice_strategy!(RiceMarcum5, Method::Marcum5, |p, ctx| rice::ie_marcum5(p, &ctx.quad));
rice_strategy!(RiceMarcum6, Method::Marcum6, |p, ctx| rice::ie_marcum6(p, &ctx.quad));
rice_strategy!(RiceLemma1, Method::Lemma1Rhs, |p, ctx| rice::ie_lemma1_rhs(p, &ctx.quad));
rice_strategy!(RiceUpper, Method::BoundUpper, |p, _ctx| rice::ie_upper(p));
rice_strategy!(RiceLower, Method::BoundLower, |p, _ctx| rice::ie_lower(p));

static RICE_METHODS: [&dyn RiceMethod; 9] = [
    &RiceQuad,
    &RiceAlt,
    &RiceSeries3,
    &RiceSeries4,
    &RiceMarcum5,
    &RiceMarcum6,
    &RiceLemma1,
    &RiceUpper,
    &RiceLower,
];

macro_rules! toronto_strategy {
    ($ty:ident, $method:expr, |$p:ident, $ctx:ident| $body:expr) => {
        struct $ty;
        impl TorontoMethod for $ty {
            fn method(&self) -> Method {
                $method
            }
            fn eval(&self, $p: TorontoParams, $ctx: &EvalContext) -> Result<EvalResult> {
                $body
            }
        }
    };
}

toronto_strategy!(TorQuad, Method::Quadrature, |p, ctx| toronto::toronto_quad(p, &ctx.quad));
toronto_strategy!(TorMarcum, Method::MarcumCase, |p, ctx| {
    toronto::toronto_marcum_case(p.m(), p.r(), p.b(), &ctx.quad)
});
toronto_strategy!(TorSeries9, Method::Series9, |p, ctx| toronto::toronto_series9(p, ctx.terms));
toronto_strategy!(TorSeries10, Method::Series10, |p, ctx| {
    toronto::toronto_series10(p, ctx.terms)
});
toronto_strategy!(TorClosed, Method::ClosedForm, |p, _ctx| toronto::toronto_closed(p));
toronto_strategy!(TorLower, Method::BoundLower, |p, _ctx| toronto::toronto_lower(p));
toronto_strategy!(TorUpper, Method::BoundUpper, |p, _ctx| toronto::toronto_upper(p));

static TORONTO_METHODS: [&dyn TorontoMethod; 7] = [
    &TorQuad,
    &TorMarcum,
    &TorSeries9,
    &TorSeries10,
    &TorClosed,
    &TorLower,
    &TorUpper,
];

macro_rules! ilhi_strategy {
    ($ty:ident, $method:expr, |$p:ident, $ctx:ident| $body:expr) => {
        struct $ty;
        impl IlhiMethod for $ty {
            fn method(&self) -> Method {
                $method
            }
            fn eval(&self, $p: IlhiParams, $ctx: &EvalContext) -> Result<EvalResult> {
                $body
            }
        }
    };
}

ilhi_strategy!(IlhiQuad, Method::Quadrature, |p, ctx| ilhi::ilhi_quad(p, &ctx.quad));
ilhi_strategy!(IlhiClosed, Method::ClosedForm, |p, _ctx| ilhi::ilhi_closed(p));
ilhi_strategy!(IlhiLower, Method::BoundLower, |p, _ctx| ilhi::ilhi_lower(p));
ilhi_strategy!(IlhiUpper, Method::BoundUpper, |p, _ctx| ilhi::ilhi_upper(p));

static ILHI_METHODS: [&dyn IlhiMethod; 4] = [&IlhiQuad, &IlhiClosed, &IlhiLower, &IlhiUpper];

/// All registered Rice strategies, in presentation order.
pub fn rice_methods() -> &'static [&'static dyn RiceMethod] {
    &RICE_METHODS
}

/// All registered Toronto strategies.
pub fn toronto_methods() -> &'static [&'static dyn TorontoMethod] {
    &TORONTO_METHODS
}

/// All registered ILHI strategies.
pub fn ilhi_methods() -> &'static [&'static dyn IlhiMethod] {
    &ILHI_METHODS
}

/// Look up a Rice strategy by its method name.
pub fn rice_method(name: &str) -> Option<&'static dyn RiceMethod> {
    rice_methods().iter().copied().find(|m| m.name() == name)
}

/// Look up a Toronto strategy by its method name.
pub fn toronto_method(name: &str) -> Option<&'static dyn TorontoMethod> {
    toronto_methods().iter().copied().find(|m| m.name() == name)
}

/// Look up an ILHI strategy by its method name.
pub fn ilhi_method(name: &str) -> Option<&'static dyn IlhiMethod> {
    ilhi_methods().iter().copied().find(|m| m.name() == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_lookup_and_dispatch() {
        let ctx = EvalContext::default();
        let p = RiceParams::new(0.0, 1.0).unwrap();
        let m = rice_method("quadrature").expect("registered");
        let r = m.eval(p, &ctx).unwrap();
        assert!((r.value - (1.0 - (-1.0f64).exp())).abs() < 1e-12);
        assert_eq!(r.method, Method::Quadrature);
        assert!(rice_method("no-such-method").is_none());
    }

    #[test]
    fn registries_expose_unique_names() {
        let names: Vec<&str> = rice_methods().iter().map(|m| m.name()).collect();
        let mut dedup = names.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(names.len(), dedup.len());
        assert_eq!(toronto_methods().len(), 7);
        assert_eq!(ilhi_methods().len(), 4);
    }

    #[test]
    fn toronto_dispatch_matches_direct_call() {
        let ctx = EvalContext::default();
        let p = TorontoParams::new(1.0, 0.5, 1.0, 2.0).unwrap();
        let via_registry = toronto_method("closed-form").unwrap().eval(p, &ctx).unwrap();
        let direct = toronto::toronto_closed(p).unwrap();
        assert_eq!(via_registry.value, direct.value);
    }

    #[test]
    fn ilhi_dispatch_matches_direct_call() {
        let ctx = EvalContext::default();
        let p = IlhiParams::new(1.0, 0.5, 2.0, 3.0).unwrap();
        let via_registry = ilhi_method("closed-form").unwrap().eval(p, &ctx).unwrap();
        let direct = ilhi::ilhi_closed(p).unwrap();
        assert_eq!(via_registry.value, direct.value);
    }
}
