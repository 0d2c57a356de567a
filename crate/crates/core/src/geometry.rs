use crate::channel::D_MIN;
use crate::error::{Error, Result};

/// Node placement on the 2-D plane, meters.
#[derive(Debug, Clone, PartialEq)]
pub struct Geometry {
    pub hap_pos: [f64; 2],
    pub fs_pos: [f64; 2],
    pub mu_pos: Vec<[f64; 2]>,
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt()
}

impl Geometry {
    pub fn new(hap_pos: [f64; 2], fs_pos: [f64; 2], mu_pos: Vec<[f64; 2]>) -> Result<Self> {
        let g = Geometry {
            hap_pos,
            fs_pos,
            mu_pos,
        };
        g.validate()?;
        Ok(g)
    }

    /// HAP at the origin, FS 20 m up the y-axis, one user between them.
    pub fn reference(mu_pos: Vec<[f64; 2]>) -> Result<Self> {
        Geometry::new([0.0, 0.0], [0.0, 20.0], mu_pos)
    }

    /// Collinear layout: user `d_ap_u` meters from the HAP, server a
    /// further `d_u_f` meters along the same line. Handy for sweeps where
    /// both link distances are prescribed directly.
    pub fn collinear(d_ap_u: f64, d_u_f: f64, n_users: usize) -> Result<Self> {
        let mu = vec![[d_ap_u, 0.0]; n_users];
        Geometry::new([0.0, 0.0], [d_ap_u + d_u_f, 0.0], mu)
    }

    pub fn n_users(&self) -> usize {
        self.mu_pos.len()
    }

    pub fn d_ap_u(&self, mu: usize) -> f64 {
        dist(self.hap_pos, self.mu_pos[mu])
    }

    pub fn d_u_f(&self, mu: usize) -> f64 {
        dist(self.mu_pos[mu], self.fs_pos)
    }

    /// Feedback link distance; same geometry as the uplink.
    pub fn d_f_u(&self, mu: usize) -> f64 {
        self.d_u_f(mu)
    }

    pub fn validate(&self) -> Result<()> {
        if self.mu_pos.is_empty() {
            return Err(Error::InvalidParameter("at least one user required".into()));
        }
        for m in 0..self.mu_pos.len() {
            for (name, d) in [("d_ap_u", self.d_ap_u(m)), ("d_u_f", self.d_u_f(m))] {
                if d < D_MIN {
                    return Err(Error::InvalidParameter(format!(
                        "user {m}: {name} = {d} m is below the {D_MIN} m floor"
                    )));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distances() {
        let g = Geometry::reference(vec![[0.0, 10.0], [3.0, 4.0]]).unwrap();
        assert!((g.d_ap_u(0) - 10.0).abs() < 1e-12);
        assert!((g.d_u_f(0) - 10.0).abs() < 1e-12);
        assert!((g.d_ap_u(1) - 5.0).abs() < 1e-12);
        assert_eq!(g.d_f_u(1), g.d_u_f(1));
    }

    #[test]
    fn collinear_layout() {
        let g = Geometry::collinear(10.0, 8.0, 1).unwrap();
        assert!((g.d_ap_u(0) - 10.0).abs() < 1e-12);
        assert!((g.d_u_f(0) - 8.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_users_on_top_of_nodes() {
        assert!(Geometry::reference(vec![[0.0, 0.05]]).is_err());
        assert!(Geometry::reference(vec![[0.0, 19.99]]).is_err());
    }
}
