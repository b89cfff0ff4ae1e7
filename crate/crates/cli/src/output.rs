//! Deterministic text formats: every float is printed with 17 significant
//! digits ({:.16e}), keys and columns appear in fixed order, so identical
//! inputs produce byte-identical files.

use bisphere_core::analysis::AsymptoticReport;
use bisphere_core::coefficients::CoefficientReport;
use bisphere_core::singular::FieldEvaluation;
use bisphere_core::{ImageSequence, Vec3};
use std::fmt::Write as _;

/// 17-significant-digit float form; JSON-compatible (NaN becomes null).
pub fn g17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

pub fn sequence_csv(seq: &ImageSequence) -> String {
    let mut out = String::from("n,p_n,q_n,mu_n\n");
    for n in 0..=seq.truncation_index() {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            n,
            g17(seq.p_n[n]),
            g17(seq.q_n[n]),
            g17(seq.mu_n[n])
        );
    }
    out
}

pub fn field_csv_header() -> &'static str {
    "x,y,z,h,vx,vy,vz,trunc_err\n"
}

/// One field row: position, h, the gradient of v, and the certified bound on
/// the truncation of |∇v|.
pub fn field_csv_row(point: Vec3, fe: &FieldEvaluation, seq: &ImageSequence) -> String {
    format!(
        "{},{},{},{},{},{},{},{}\n",
        g17(point.x),
        g17(point.y),
        g17(point.z),
        g17(fe.h),
        g17(fe.grad_v.x),
        g17(fe.grad_v.y),
        g17(fe.grad_v.z),
        g17(fe.trunc_err_grad_v(seq)),
    )
}

pub fn coefficients_json(rep: &CoefficientReport) -> String {
    format!(
        "{{\"c_h_eps\": {}, \"c_h_eps_tail\": {}, \"c_h\": {}, \"c_h_tail\": {}, \"q_sum\": {}, \"potential_diff\": {}, \"singular_coeff\": {}}}\n",
        g17(rep.c_h_eps),
        g17(rep.c_h_eps_tail),
        g17(rep.c_h),
        g17(rep.c_h_tail),
        g17(rep.q_sum),
        g17(rep.potential_diff),
        g17(rep.singular_coeff),
    )
}

pub fn sweep_csv(report: &AsymptoticReport) -> String {
    let mut out =
        String::from("eps,q_sum,c_h_eps,c_h,potential_diff,grad_axis,blowup_product,eta_max\n");
    for r in &report.records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            g17(r.eps),
            g17(r.q_sum),
            g17(r.c_h_eps),
            g17(r.c_h),
            g17(r.potential_diff),
            g17(r.grad_axis_norm),
            g17(r.blowup_product),
            g17(r.eta_max),
        );
    }
    out
}

pub fn sweep_json(report: &AsymptoticReport, background: &str, tol: f64) -> String {
    let mut out = String::new();
    let _ = write!(
        out,
        "{{\"background\": {background:?}, \"tol\": {},",
        g17(tol)
    );
    out.push_str(" \"records\": [");
    for (i, r) in report.records.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        let _ = write!(
            out,
            "{{\"eps\": {}, \"delta\": {}, \"q_sum\": {}, \"q_tail\": {}, \"c_h_eps\": {}, \"c_h_eps_tail\": {}, \"c_h\": {}, \"c_h_tail\": {}, \"potential_diff\": {}, \"grad_axis\": [{}, {}, {}], \"grad_axis_norm\": {}, \"blowup_product\": {}, \"eta_max\": {}, \"transverse_max\": {}}}",
            g17(r.eps),
            g17(r.delta),
            g17(r.q_sum),
            g17(r.q_tail),
            g17(r.c_h_eps),
            g17(r.c_h_eps_tail),
            g17(r.c_h),
            g17(r.c_h_tail),
            g17(r.potential_diff),
            g17(r.grad_axis.x),
            g17(r.grad_axis.y),
            g17(r.grad_axis.z),
            g17(r.grad_axis_norm),
            g17(r.blowup_product),
            g17(r.eta_max),
            g17(r.transverse_max),
        );
    }
    let _ = writeln!(
        out,
        "], \"fits\": {{\"limit_rate_const\": {}, \"eta_decay_slope\": {}}}}}",
        g17(report.limit_rate_const),
        g17(report.eta_decay_slope),
    );
    out
}

/// Two-column gnuplot data: eps vs blow-up product.
pub fn sweep_dat(report: &AsymptoticReport) -> String {
    let mut out = String::from("# eps blowup_product\n");
    for r in &report.records {
        let _ = writeln!(out, "{} {}", g17(r.eps), g17(r.blowup_product));
    }
    out
}
