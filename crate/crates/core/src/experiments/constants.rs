//! Published bounds on the optimum of random d-regular graphs.
//!
//! `rho_d n` is the maximum cut and `sigma_d n` the maximum independent set
//! size of a typical random d-regular graph. Only upper bounds are needed.

use serde::Serialize;

/// A read-only constant with a note on where it comes from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Constant {
    pub symbol: &'static str,
    pub value: f64,
    pub provenance: &'static str,
    /// True when the value is an asymptotic (large d) bound.
    pub asymptotic: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LiteratureConstants {
    pub rho3_upper: Constant,
    pub sigma3_upper: Constant,
    /// Symbolic only; the constant hidden in the O(sqrt d) is not known.
    pub rho_large_d_form: &'static str,
    pub sigma_large_d_form: &'static str,
}

pub const LITERATURE: LiteratureConstants = LiteratureConstants {
    rho3_upper: Constant {
        symbol: "rho_3",
        value: 1.4026,
        provenance: "upper bound on the Max-Cut density of random 3-regular graphs (literature)",
        asymptotic: false,
    },
    sigma3_upper: Constant {
        symbol: "sigma_3",
        value: 0.454,
        provenance: "upper bound on the independence ratio of random 3-regular graphs (literature)",
        asymptotic: false,
    },
    rho_large_d_form: "rho_d <= d/4 + O(sqrt(d)) for large d",
    sigma_large_d_form: "sigma_d <= 2 ln(d) / d for large d",
};

/// Smallest degree at which the large-d independence bound is applied.
pub const SIGMA_LARGE_D_MIN_DEGREE: usize = 4;

impl LiteratureConstants {
    /// Upper bound on `rho_d`, if a number is known.
    pub fn rho_upper(&self, d: usize) -> Option<Constant> {
        (d == 3).then_some(self.rho3_upper)
    }

    /// Upper bound on `sigma_d`: the d = 3 value, or `2 ln d / d` for
    /// `d >= 4` with the asymptotic flag set.
    pub fn sigma_upper(&self, d: usize) -> Option<Constant> {
        match d {
            3 => Some(self.sigma3_upper),
            d if d >= SIGMA_LARGE_D_MIN_DEGREE => Some(Constant {
                symbol: "sigma_d",
                value: 2.0 * (d as f64).ln() / d as f64,
                provenance: "large-d bound sigma_d <= 2 ln(d)/d (literature)",
                asymptotic: true,
            }),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table() {
        assert_eq!(LITERATURE.rho_upper(3).unwrap().value, 1.4026);
        assert!(LITERATURE.rho_upper(4).is_none());
        assert_eq!(LITERATURE.sigma_upper(3).unwrap().value, 0.454);
        let s10 = LITERATURE.sigma_upper(10).unwrap();
        assert!(s10.asymptotic);
        assert!((s10.value - 0.2 * 10f64.ln()).abs() < 1e-15);
        assert!(LITERATURE.sigma_upper(2).is_none());
    }
}
