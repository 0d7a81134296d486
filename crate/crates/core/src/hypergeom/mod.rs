//! Generalized hypergeometric functions pFq with q = p + 1.
//!
//! Three routes are provided: direct Taylor summation at boosted precision,
//! the large-argument expansion for the repeated-parameter family
//! pF(p+1)(1,…,1; 2,…,2, α; −z), and a dispatcher that picks between them.
//! Term-wise integration of the series is in [`integrate`].

pub mod asymptotic;
pub mod auto;
pub mod integrate;
pub mod table;
pub mod taylor;

use std::fmt;

use crate::error::{Error, Result};
use crate::real::{at, Precision, Real};

pub use asymptotic::{asym_algebraic, asym_exponential, expansion, AlgebraicTerm, AsymExpansion};
pub use auto::{eval_auto, Z_SWITCH};
pub use integrate::{integrate_spec, Antiderivative};
pub use taylor::{eval_taylor, eval_taylor_with, TaylorOptions};

/// Parameter lists and argument of a pFq.
#[derive(Debug, Clone)]
pub struct HypSpec {
    pub numerator: Vec<Real>,
    pub denominator: Vec<Real>,
    pub argument: Real,
}

impl HypSpec {
    pub fn new(numerator: Vec<Real>, denominator: Vec<Real>, argument: Real) -> Result<Self> {
        let spec = HypSpec {
            numerator,
            denominator,
            argument,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        for b in &self.denominator {
            if b.is_integer() && *b <= 0 {
                return Err(Error::InvalidSpec(format!(
                    "denominator parameter {} is a nonpositive integer",
                    b.to_f64()
                )));
            }
        }
        if self.denominator.len() != self.numerator.len() + 1 {
            return Err(Error::InvalidSpec(format!(
                "expected q = p + 1, got p = {}, q = {}",
                self.numerator.len(),
                self.denominator.len()
            )));
        }
        Ok(())
    }

    pub fn precision(&self) -> Precision {
        Precision::new(self.argument.prec().max(Precision::MIN_BITS)).unwrap()
    }

    pub fn with_argument(&self, z: Real) -> HypSpec {
        HypSpec {
            numerator: self.numerator.clone(),
            denominator: self.denominator.clone(),
            argument: z,
        }
    }

    pub fn p(&self) -> usize {
        self.numerator.len()
    }
}

impl fmt::Display for HypSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[Real]| {
            v.iter()
                .map(|x| format!("{}", x.to_f64()))
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "{}F{}({};{};{})",
            self.numerator.len(),
            self.denominator.len(),
            list(&self.numerator),
            list(&self.denominator),
            self.argument.to_f64()
        )
    }
}

/// The trailing denominator parameter of the repeated-parameter family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Alpha {
    ThreeHalves,
    FiveHalves,
}

impl Alpha {
    pub fn value(self, p: Precision) -> Real {
        match self {
            Alpha::ThreeHalves => p.ratio(3, 2),
            Alpha::FiveHalves => p.ratio(5, 2),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Alpha::ThreeHalves => "3/2",
            Alpha::FiveHalves => "5/2",
        }
    }

    pub fn parse(s: &str) -> Option<Alpha> {
        match s {
            "3/2" => Some(Alpha::ThreeHalves),
            "5/2" => Some(Alpha::FiveHalves),
            _ => None,
        }
    }
}

/// pF(p+1)(1,…,1; 2,…,2, α; ·) with `ones` = p unit numerator parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RepeatedFamily {
    pub ones: usize,
    pub alpha: Alpha,
}

impl RepeatedFamily {
    /// ₂F₃(1,1;2,2,3/2;·), the cosine-integral family.
    pub const F23_32: RepeatedFamily = RepeatedFamily {
        ones: 2,
        alpha: Alpha::ThreeHalves,
    };
    /// ₃F₄(1,1,1;2,2,2,5/2;·), the γ₁ family.
    pub const F34_52: RepeatedFamily = RepeatedFamily {
        ones: 3,
        alpha: Alpha::FiveHalves,
    };
    /// ₄F₅(1,1,1,1;2,2,2,2,5/2;·), the γ₂ family.
    pub const F45_52: RepeatedFamily = RepeatedFamily {
        ones: 4,
        alpha: Alpha::FiveHalves,
    };

    pub fn new(ones: usize, alpha: Alpha) -> Result<Self> {
        if ones == 0 {
            return Err(Error::UnsupportedFamily(
                "at least one unit numerator parameter is required".into(),
            ));
        }
        Ok(RepeatedFamily { ones, alpha })
    }

    /// The family entering the γ_j sum: (j+2) ones with α = 5/2.
    pub fn for_stieltjes(j: usize) -> Self {
        RepeatedFamily {
            ones: j + 2,
            alpha: Alpha::FiveHalves,
        }
    }

    pub fn spec(&self, z: Real) -> HypSpec {
        let p = Precision::new(z.prec().max(64)).unwrap();
        let mut den = vec![p.real(2); self.ones];
        den.push(self.alpha.value(p));
        HypSpec {
            numerator: vec![p.real(1); self.ones],
            denominator: den,
            argument: z,
        }
    }

    /// Recognise a spec as a member of the family (argument ignored).
    pub fn from_spec(spec: &HypSpec) -> Result<Self> {
        let p = spec.numerator.len();
        let unsupported = || Error::UnsupportedFamily(format!("{spec}"));
        if p == 0 || spec.denominator.len() != p + 1 {
            return Err(unsupported());
        }
        if spec.numerator.iter().any(|a| *a != 1) {
            return Err(unsupported());
        }
        let mut twos = 0;
        let mut alpha = None;
        for b in &spec.denominator {
            if *b == 2 {
                twos += 1;
            } else if *b == 1.5 && alpha.is_none() {
                alpha = Some(Alpha::ThreeHalves);
            } else if *b == 2.5 && alpha.is_none() {
                alpha = Some(Alpha::FiveHalves);
            } else {
                return Err(unsupported());
            }
        }
        match alpha {
            Some(alpha) if twos == p => Ok(RepeatedFamily { ones: p, alpha }),
            _ => Err(unsupported()),
        }
    }

    pub fn label(&self) -> String {
        format!("{}F{}(1;2;{})", self.ones, self.ones + 1, self.alpha.as_str())
    }
}

impl fmt::Display for RepeatedFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Pochhammer symbol (w)_n.
pub fn pochhammer(w: &Real, n: u32, p: Precision) -> Real {
    let mut acc = p.real(1);
    let mut x = at(p, w);
    for _ in 0..n {
        acc *= &x;
        x += 1u32;
    }
    acc
}
