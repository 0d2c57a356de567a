use crate::error::{Error, Result};

/// Every physical and circuit constant of the system in SI units.
///
/// Defaults reproduce the reference simulation setup; all fields are
/// plain `f64`/`usize` so a parameter file can override any of them.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemParams {
    /// Access-point transmit power, W.
    pub p_ap: f64,
    /// Antenna count at the access point.
    pub n_antennas: usize,
    /// System bandwidth, Hz.
    pub bandwidth: f64,
    /// Noise power at the user receiver, W.
    pub noise_n: f64,
    /// Noise power at the fog-server receiver, W.
    pub noise_s: f64,
    /// Noise power at the user's feedback receiver, W.
    pub noise_f: f64,
    /// Rician factor, dB. `-inf` means pure Rayleigh, `+inf` pure LoS.
    pub rician_k_db: f64,
    /// Carrier frequency, MHz.
    pub carrier_mhz: f64,
    /// Distance power-loss coefficient of the indoor model.
    pub pl_coeff: f64,
    /// Minimum information rate, bit/s.
    pub r_th: f64,
    /// Block duration, s.
    pub t_b: f64,
    /// Task complexity, logic operations per bit.
    pub k_ops: f64,
    /// Energy-harvesting conversion efficiency, in (0,1).
    pub eta: f64,
    /// Decoding energy per bit, J/bit.
    pub xi: f64,
    /// User maximum transmit power, W.
    pub p_uf_max: f64,
    /// User logic operations per second.
    pub f_op: f64,
    /// Fog-server logic operations per second.
    pub f_fogop: f64,
    /// Technology immaturity factor multiplying the Landauer energy.
    pub m_c: f64,
    /// Circuit activity factor.
    pub act: f64,
    /// Circuit fanout.
    pub fanout: f64,
    /// Landauer energy per logic operation, J.
    pub n0_ln2: f64,
    /// Task-result scaling factor (output bits per input bit).
    pub beta: f64,
    /// Fog-server feedback transmit power, W.
    pub p_fu_max: f64,
}

impl Default for SystemParams {
    fn default() -> Self {
        SystemParams {
            p_ap: 1.0,
            n_antennas: 8,
            bandwidth: 2e6,
            noise_n: dbm_to_watts(-140.0),
            noise_s: dbm_to_watts(-140.0),
            noise_f: dbm_to_watts(-140.0),
            rician_k_db: 3.5,
            carrier_mhz: 915.0,
            pl_coeff: 22.0,
            r_th: 2e4,
            t_b: 1.0,
            k_ops: 1e4,
            eta: 0.6,
            xi: 1e-10,
            p_uf_max: 1e-3,
            f_op: 1e9,
            f_fogop: 1e15,
            m_c: 1e4,
            act: 0.1,
            fanout: 3.0,
            n0_ln2: 3e-21,
            beta: 1e-2,
            p_fu_max: 1.0,
        }
    }
}

/// dBm to watts: 10^((dBm - 30) / 10).
pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

impl SystemParams {
    /// Per-operation computing energy `F0 * act * M_c * N0 ln2`, J/op.
    pub fn energy_per_op(&self) -> f64 {
        self.fanout * self.act * self.m_c * self.n0_ln2
    }

    /// Bits that must be moved per block, `r_th * t_b`.
    pub fn bits_per_block(&self) -> f64 {
        self.r_th * self.t_b
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("p_ap", self.p_ap),
            ("bandwidth", self.bandwidth),
            ("noise_n", self.noise_n),
            ("noise_s", self.noise_s),
            ("noise_f", self.noise_f),
            ("carrier_mhz", self.carrier_mhz),
            ("pl_coeff", self.pl_coeff),
            ("r_th", self.r_th),
            ("t_b", self.t_b),
            ("xi", self.xi),
            ("p_uf_max", self.p_uf_max),
            ("f_op", self.f_op),
            ("f_fogop", self.f_fogop),
            ("m_c", self.m_c),
            ("act", self.act),
            ("fanout", self.fanout),
            ("n0_ln2", self.n0_ln2),
            ("beta", self.beta),
            ("p_fu_max", self.p_fu_max),
        ];
        for (name, v) in positive {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be strictly positive and finite, got {v}"
                )));
            }
        }
        if self.k_ops < 0.0 || !self.k_ops.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "k_ops must be nonnegative and finite, got {}",
                self.k_ops
            )));
        }
        if !(self.eta > 0.0 && self.eta < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "eta must lie in (0,1), got {}",
                self.eta
            )));
        }
        if self.n_antennas < 1 {
            return Err(Error::InvalidParameter(
                "n_antennas must be at least 1".into(),
            ));
        }
        if self.rician_k_db.is_nan() {
            return Err(Error::InvalidParameter("rician_k_db is NaN".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip_reference_values() {
        let p = SystemParams::default();
        assert_eq!(p.p_ap, 1.0);
        assert_eq!(p.n_antennas, 8);
        assert_eq!(p.bandwidth, 2e6);
        assert_eq!(p.noise_n, 1e-17);
        assert_eq!(p.noise_s, 1e-17);
        assert_eq!(p.noise_f, 1e-17);
        assert_eq!(p.rician_k_db, 3.5);
        assert_eq!(p.carrier_mhz, 915.0);
        assert_eq!(p.pl_coeff, 22.0);
        assert_eq!(p.r_th, 2e4);
        assert_eq!(p.t_b, 1.0);
        assert_eq!(p.k_ops, 1e4);
        assert_eq!(p.eta, 0.6);
        assert_eq!(p.xi, 1e-10);
        assert_eq!(p.p_uf_max, 1e-3);
        assert_eq!(p.f_op, 1e9);
        assert_eq!(p.f_fogop, 1e15);
        assert_eq!(p.m_c, 1e4);
        assert_eq!(p.act, 0.1);
        assert_eq!(p.fanout, 3.0);
        assert_eq!(p.n0_ln2, 3e-21);
        assert_eq!(p.beta, 1e-2);
        assert_eq!(p.p_fu_max, 1.0);
        p.validate().unwrap();
    }

    #[test]
    fn dbm_conversion() {
        assert!((dbm_to_watts(-140.0) - 1e-17).abs() < 1e-30);
        assert!((dbm_to_watts(0.0) - 1e-3).abs() < 1e-18);
        assert!((dbm_to_watts(30.0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn validation_rejects_bad_eta() {
        let mut p = SystemParams::default();
        p.eta = 1.0;
        assert!(p.validate().is_err());
        p.eta = 0.0;
        assert!(p.validate().is_err());
    }

    #[test]
    fn validation_rejects_nonpositive_power() {
        let mut p = SystemParams::default();
        p.p_ap = 0.0;
        assert!(p.validate().is_err());
    }
}
