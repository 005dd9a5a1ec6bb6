//! Derivative-free local maximization (Nelder–Mead).

#[derive(Debug, Clone, Copy)]
pub struct NelderMead {
    pub initial_step: f64,
    pub f_tol: f64,
    pub x_tol: f64,
    pub max_evals: usize,
}

impl Default for NelderMead {
    fn default() -> Self {
        NelderMead { initial_step: 0.1, f_tol: 1e-15, x_tol: 1e-11, max_evals: 20_000 }
    }
}

#[derive(Debug, Clone)]
pub struct Maximum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evals: usize,
    pub converged: bool,
}

impl NelderMead {
    /// Maximizes `f` from `x0`, restarting once from the optimum.
    pub fn maximize(&self, f: &mut impl FnMut(&[f64]) -> f64, x0: &[f64]) -> Maximum {
        let first = self.run(f, x0, self.initial_step);
        let second = self.run(f, &first.x, self.initial_step * 0.01);
        let evals = first.evals + second.evals;
        if second.value >= first.value {
            Maximum { evals, ..second }
        } else {
            Maximum { evals, ..first }
        }
    }

    fn run(&self, f: &mut impl FnMut(&[f64]) -> f64, x0: &[f64], step: f64) -> Maximum {
        let d = x0.len();
        if d == 0 {
            let v = f(x0);
            return Maximum { x: vec![], value: v, evals: 1, converged: true };
        }
        // minimize g = −f
        let mut pts: Vec<Vec<f64>> = vec![x0.to_vec()];
        for i in 0..d {
            let mut p = x0.to_vec();
            p[i] += step;
            pts.push(p);
        }
        let mut vals: Vec<f64> = pts.iter().map(|p| -f(p)).collect();
        let mut evals = d + 1;
        let (alpha, gamma, rho, sigma) = (1.0, 2.0, 0.5, 0.5);
        let mut converged = false;
        while evals < self.max_evals {
            let mut order: Vec<usize> = (0..=d).collect();
            order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
            pts = order.iter().map(|&i| pts[i].clone()).collect();
            vals = order.iter().map(|&i| vals[i]).collect();
            let spread = (vals[d] - vals[0]).abs();
            let size = pts[1..]
                .iter()
                .map(|p| p.iter().zip(&pts[0]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
                .fold(0.0, f64::max);
            if spread <= self.f_tol * vals[0].abs().max(1.0) && size <= self.x_tol {
                converged = true;
                break;
            }
            let centroid: Vec<f64> = (0..d).map(|k| pts[..d].iter().map(|p| p[k]).sum::<f64>() / d as f64).collect();
            let along = |t: f64| -> Vec<f64> { (0..d).map(|k| centroid[k] + t * (pts[d][k] - centroid[k])).collect() };
            let xr = along(-alpha);
            let fr = -f(&xr);
            evals += 1;
            if fr < vals[0] {
                let xe = along(-gamma);
                let fe = -f(&xe);
                evals += 1;
                if fe < fr {
                    pts[d] = xe;
                    vals[d] = fe;
                } else {
                    pts[d] = xr;
                    vals[d] = fr;
                }
            } else if fr < vals[d - 1] {
                pts[d] = xr;
                vals[d] = fr;
            } else {
                let (xc, fc) = if fr < vals[d] {
                    let x = along(-rho);
                    let v = -f(&x);
                    (x, v)
                } else {
                    let x = along(rho);
                    let v = -f(&x);
                    (x, v)
                };
                evals += 1;
                if fc < vals[d].min(fr) {
                    pts[d] = xc;
                    vals[d] = fc;
                } else {
                    for i in 1..=d {
                        pts[i] = (0..d).map(|k| pts[0][k] + sigma * (pts[i][k] - pts[0][k])).collect();
                        vals[i] = -f(&pts[i]);
                    }
                    evals += d;
                }
            }
        }
        let best = (0..=d).min_by(|&a, &b| vals[a].total_cmp(&vals[b])).unwrap();
        Maximum { x: pts[best].clone(), value: -vals[best], evals, converged }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_quadratic_peak() {
        let mut f = |x: &[f64]| -(x[0] - 1.0).powi(2) - 3.0 * (x[1] + 0.5).powi(2) + 2.0;
        let m = NelderMead::default().maximize(&mut f, &[0.0, 0.0]);
        assert!(m.converged);
        assert!((m.value - 2.0).abs() < 1e-14);
        assert!((m.x[0] - 1.0).abs() < 1e-7 && (m.x[1] + 0.5).abs() < 1e-7);
    }
}
