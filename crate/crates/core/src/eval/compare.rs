use alloc::format;
use alloc::string::String;

use crate::error::{Error, Result};
use crate::eval::EvalCurve;

/// Renders named curves side by side as wide CSV:
/// `threshold,<name1>,<name2>,...` with one row per integer threshold. All
/// curves must share the same `t_max`.
pub fn compare_runs(curves: &[(String, EvalCurve)]) -> Result<String> {
    let Some(((_, first), rest)) = curves.split_first() else {
        return Err(Error::EmptyInput("curve set"));
    };
    for (_, curve) in rest {
        if curve.t_max() != first.t_max() {
            return Err(Error::TMaxMismatch { left: first.t_max(), right: curve.t_max() });
        }
    }

    let mut out = String::from("threshold");
    for (name, _) in curves {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for t in 0..=first.t_max() {
        out.push_str(&format!("{t}"));
        for (_, curve) in curves {
            out.push_str(&format!(",{:.6}", curve.rate_at(t)));
        }
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::detection_rate_curve;

    fn curve(dist: f64, t_max: usize) -> EvalCurve {
        detection_rate_curve(&[(dist, 0.0)], &[(0.0, 0.0)], t_max).unwrap()
    }

    #[test]
    fn identical_curves_render_identical_columns() {
        let c = curve(3.0, 10);
        let csv = compare_runs(&[("a".into(), c.clone()), ("b".into(), c)]).unwrap();
        for line in csv.lines().skip(1) {
            let mut fields = line.split(',');
            let _t = fields.next().unwrap();
            let a = fields.next().unwrap();
            let b = fields.next().unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn single_curve_row_count() {
        let csv = compare_runs(&[("only".into(), curve(1.0, 15))]).unwrap();
        assert_eq!(csv.lines().count(), 17);
    }

    #[test]
    fn mismatched_t_max_is_rejected() {
        let err = compare_runs(&[("a".into(), curve(1.0, 10)), ("b".into(), curve(1.0, 12))])
            .unwrap_err();
        assert_eq!(err, Error::TMaxMismatch { left: 10, right: 12 });
    }
}
