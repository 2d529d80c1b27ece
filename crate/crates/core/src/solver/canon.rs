//! Minimization form of a [`DeterministicProgram`] with smoothed cone terms.

use nalgebra::{DMatrix, DVector};

use crate::model::{ConeTerm, DeterministicProgram, ProgramConstraint, Sense};

/// `scale * ||lx x - shift||`.
#[derive(Debug, Clone)]
pub(crate) struct Cone {
    pub scale: f64,
    pub lx: DMatrix<f64>,
    pub shift: DVector<f64>,
}

impl Cone {
    fn from_term(term: &ConeTerm, sign: f64) -> Option<Self> {
        if term.scale == 0.0 {
            return None;
        }
        let n = term.var_cols();
        let lx = term.root.columns(0, n).into_owned();
        let shift = if term.augmented {
            term.root.column(n).into_owned()
        } else {
            DVector::zeros(term.root.nrows())
        };
        Some(Self {
            scale: sign * term.scale,
            lx,
            shift,
        })
    }

    pub fn image(&self, x: &DVector<f64>) -> DVector<f64> {
        &self.lx * x - &self.shift
    }

    /// Value, gradient and Hessian of `scale * sqrt(||z||^2 + eps)`.
    pub fn smooth(&self, x: &DVector<f64>, eps: f64) -> (f64, DVector<f64>, DMatrix<f64>) {
        let z = self.image(x);
        let phi = (z.norm_squared() + eps).sqrt();
        let ltz = self.lx.transpose() * &z;
        let grad = &ltz * (self.scale / phi);
        let ltl = self.lx.transpose() * &self.lx;
        let hess = (ltl / phi - &ltz * ltz.transpose() / (phi * phi * phi)) * self.scale;
        (self.scale * phi, grad, hess)
    }

    pub fn smooth_value(&self, x: &DVector<f64>, eps: f64) -> f64 {
        self.scale * (self.image(x).norm_squared() + eps).sqrt()
    }
}

/// `lin'x + off + cone`.
#[derive(Debug, Clone)]
pub(crate) struct Affine {
    pub lin: DVector<f64>,
    pub off: f64,
    pub cone: Option<Cone>,
}

impl Affine {
    fn from_constraint(c: &ProgramConstraint) -> Self {
        Self {
            lin: DVector::from_column_slice(&c.linear),
            off: c.offset,
            cone: c.cone.as_ref().and_then(|t| Cone::from_term(t, 1.0)),
        }
    }

    pub fn value(&self, x: &DVector<f64>, eps: f64) -> f64 {
        self.lin.dot(x) + self.off + self.cone.as_ref().map_or(0.0, |c| c.smooth_value(x, eps))
    }

    pub fn eval(&self, x: &DVector<f64>, eps: f64) -> (f64, DVector<f64>, Option<DMatrix<f64>>) {
        let base = self.lin.dot(x) + self.off;
        match &self.cone {
            None => (base, self.lin.clone(), None),
            Some(c) => {
                let (v, g, h) = c.smooth(x, eps);
                (base + v, &self.lin + g, Some(h))
            }
        }
    }
}

/// `min f0(x)  s.t.  f_i(x) <= 0, x >= 0`.
#[derive(Debug, Clone)]
pub(crate) struct Canon {
    pub n: usize,
    pub objective: Affine,
    pub constraints: Vec<Affine>,
}

impl Canon {
    pub fn new(p: &DeterministicProgram) -> Self {
        let sign = match p.sense {
            Sense::Minimize => 1.0,
            Sense::Maximize => -1.0,
        };
        let objective = Affine {
            lin: DVector::from_iterator(p.n_vars(), p.linear_objective.iter().map(|v| sign * v)),
            off: 0.0,
            cone: p
                .cone_objective
                .as_ref()
                .and_then(|t| Cone::from_term(t, sign)),
        };
        Self {
            n: p.n_vars(),
            objective,
            constraints: p.constraints.iter().map(Affine::from_constraint).collect(),
        }
    }
}
