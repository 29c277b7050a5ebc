//! Canned sweeps reproducing the data series behind the six reference
//! figures. Captions leave some parameters unstated; the defaults below are
//! documented in `preset list` and every one accepts an override.

use ricebounds::{ilhi_method, rice_method, toronto_method, IlhiParams, RiceParams, TorontoParams};

use crate::sweep::Column;

pub struct PresetOverrides {
    pub steps: Option<usize>,
    pub lo: Option<f64>,
    pub hi: Option<f64>,
    pub k: Option<f64>,
    pub x: Option<f64>,
    pub big_b: Option<f64>,
    pub a: Option<f64>,
}

pub struct Preset {
    pub name: &'static str,
    pub describe: &'static str,
    pub varying: &'static str,
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

pub const PRESETS: [Preset; 6] = [
    Preset {
        name: "figure1",
        describe: "rice: bounds vs x at k=0.5 (x in [0.1, 20], quadrature/bound-upper/bound-lower)",
        varying: "x",
        lo: 0.1,
        hi: 20.0,
        steps: 200,
    },
    Preset {
        name: "figure2",
        describe: "rice: bounds vs k at x=7.0 (k in [0.05, 0.95])",
        varying: "k",
        lo: 0.05,
        hi: 0.95,
        steps: 181,
    },
    Preset {
        name: "figure3",
        describe: "rice: lower bound vs k at x=80 (use --x 40 for the alternative range)",
        varying: "k",
        lo: 0.05,
        hi: 0.95,
        steps: 181,
    },
    Preset {
        name: "figure4",
        describe: "toronto: closed form at n=0.5 and oracle at n=0.4/0.5/0.6, m=1, B=2, r sweep",
        varying: "r",
        lo: 0.05,
        hi: 4.0,
        steps: 160,
    },
    Preset {
        name: "figure5",
        describe: "toronto: closed form at n=2.5 and oracle at n=2.4/2.5/2.6, m=3, B=2, r sweep",
        varying: "r",
        lo: 0.05,
        hi: 4.0,
        steps: 160,
    },
    Preset {
        name: "figure6",
        describe: "ilhi: closed form and oracle at (m,n) in {(1,0.5),(2,1.5),(3,2.5)}, a=2, z sweep",
        varying: "z",
        lo: 0.05,
        hi: 10.0,
        steps: 200,
    },
];

pub fn find(name: &str) -> Option<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name)
}

fn rice_column(method: &'static str, fixed_k: Option<f64>, fixed_x: Option<f64>) -> Column {
    let label = method.to_string();
    let eval = rice_method(method).expect("registered rice method");
    Column {
        label,
        eval: Box::new(move |v, ctx| {
            let (k, x) = match (fixed_k, fixed_x) {
                (Some(k), None) => (k, v),
                (None, Some(x)) => (v, x),
                _ => unreachable!("exactly one rice parameter varies"),
            };
            eval.eval(RiceParams::new(k, x)?, ctx).map(|r| r.value)
        }),
    }
}

fn toronto_column(method: &'static str, m: f64, n: f64, big_b: f64) -> Column {
    let eval = toronto_method(method).expect("registered toronto method");
    Column {
        label: format!("{method}@n={n}"),
        eval: Box::new(move |r, ctx| {
            eval.eval(TorontoParams::new(m, n, r, big_b)?, ctx)
                .map(|res| res.value)
        }),
    }
}

fn ilhi_column(method: &'static str, m: f64, n: f64, a: f64) -> Column {
    let eval = ilhi_method(method).expect("registered ilhi method");
    Column {
        label: format!("{method}@m={m},n={n}"),
        eval: Box::new(move |z, ctx| {
            eval.eval(IlhiParams::new(m, n, a, z)?, ctx)
                .map(|res| res.value)
        }),
    }
}

/// The columns of a preset with overrides applied; also returns the grid
/// bounds and step count to use.
pub fn build(
    preset: &Preset,
    ov: &PresetOverrides,
) -> Result<(Vec<Column>, f64, f64, usize), String> {
    let lo = ov.lo.unwrap_or(preset.lo);
    let hi = ov.hi.unwrap_or(preset.hi);
    let steps = ov.steps.unwrap_or(preset.steps);
    if !(lo < hi) || steps < 2 {
        return Err(format!(
            "invalid grid: lo={lo}, hi={hi}, steps={steps} (need lo < hi and steps >= 2)"
        ));
    }
    let cols = match preset.name {
        "figure1" => {
            let k = ov.k.unwrap_or(0.5);
            vec![
                rice_column("quadrature", Some(k), None),
                rice_column("bound-upper", Some(k), None),
                rice_column("bound-lower", Some(k), None),
            ]
        }
        "figure2" => {
            let x = ov.x.unwrap_or(7.0);
            vec![
                rice_column("quadrature", None, Some(x)),
                rice_column("bound-upper", None, Some(x)),
                rice_column("bound-lower", None, Some(x)),
            ]
        }
        "figure3" => {
            let x = ov.x.unwrap_or(80.0);
            vec![
                rice_column("quadrature", None, Some(x)),
                rice_column("bound-lower", None, Some(x)),
            ]
        }
        "figure4" => {
            let b = ov.big_b.unwrap_or(2.0);
            vec![
                toronto_column("closed-form", 1.0, 0.5, b),
                toronto_column("quadrature", 1.0, 0.4, b),
                toronto_column("quadrature", 1.0, 0.5, b),
                toronto_column("quadrature", 1.0, 0.6, b),
            ]
        }
        "figure5" => {
            let b = ov.big_b.unwrap_or(2.0);
            vec![
                toronto_column("closed-form", 3.0, 2.5, b),
                toronto_column("quadrature", 3.0, 2.4, b),
                toronto_column("quadrature", 3.0, 2.5, b),
                toronto_column("quadrature", 3.0, 2.6, b),
            ]
        }
        "figure6" => {
            let a = ov.a.unwrap_or(2.0);
            let mut cols = Vec::new();
            for (m, n) in [(1.0, 0.5), (2.0, 1.5), (3.0, 2.5)] {
                cols.push(ilhi_column("closed-form", m, n, a));
                cols.push(ilhi_column("quadrature", m, n, a));
            }
            cols
        }
        other => return Err(format!("unknown preset '{other}'")),
    };
    Ok((cols, lo, hi, steps))
}
