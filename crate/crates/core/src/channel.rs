use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::Geometry;
use crate::params::SystemParams;

/// Validity floor of the indoor path-loss model; the expression diverges
/// as d -> 0, so shorter distances are rejected rather than clamped.
pub const D_MIN: f64 = 0.1;

/// Indoor path loss in dB: `20 log10(f_MHz) + n log10(d_m) - 28`.
pub fn path_loss_db(d: f64, f_c_mhz: f64, n_coeff: f64) -> Result<f64> {
    if !(d >= D_MIN) {
        return Err(Error::DistanceBelowFloor(d, D_MIN));
    }
    if !(f_c_mhz > 0.0) || !(n_coeff > 0.0) {
        return Err(Error::Domain(
            "carrier frequency and loss coefficient must be positive".into(),
        ));
    }
    Ok(20.0 * f_c_mhz.log10() + n_coeff * d.log10() - 28.0)
}

/// Linear power gain for a loss of `l_db` dB: `10^(-L/10)`.
pub fn gain_from_db(l_db: f64) -> f64 {
    10f64.powf(-l_db / 10.0)
}

/// One block's channel draws for one user, with the derived power gains.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    /// Downlink vector channel, one entry per HAP antenna.
    pub h_ap_u: Vec<Complex64>,
    /// Uplink (user -> fog server) scalar channel.
    pub h_uf: Complex64,
    /// Feedback (fog server -> user) scalar channel.
    pub h_fu: Complex64,
    /// Effective downlink power gain after beamforming, `‖h_ap_u‖²`.
    pub g_ap_u: f64,
    pub g_uf: f64,
    pub g_fu: f64,
}

/// The three link gains the solvers consume.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkGains {
    pub g_ap_u: f64,
    pub g_uf: f64,
    pub g_fu: f64,
}

impl ChannelRealization {
    pub fn gains(&self) -> LinkGains {
        LinkGains {
            g_ap_u: self.g_ap_u,
            g_uf: self.g_uf,
            g_fu: self.g_fu,
        }
    }
}

/// Effective power gain of matched-filter beamforming: with the weight
/// aligned to the channel, `|h^H w|²` attains `‖h‖²`.
pub fn mrt_effective_gain(h: &[Complex64]) -> Result<f64> {
    let norm_sq: f64 = h.iter().map(|c| c.norm_sqr()).sum();
    if !(norm_sq > 0.0) {
        return Err(Error::ZeroChannel);
    }
    Ok(norm_sq)
}

/// Stream labels keeping every consumer of randomness on its own
/// deterministic substream of the master seed.
#[derive(Debug, Clone, Copy)]
pub enum StreamTag {
    FadingApU = 0,
    FadingUf = 1,
    FadingFu = 2,
    CsiError = 3,
    Permutation = 4,
    Placement = 5,
}

/// Counter-based stream split: the ChaCha key is built directly from
/// (seed, tag, user, block), so parallel and serial evaluation orders
/// produce bit-identical draws.
pub fn stream(seed: u64, tag: StreamTag, mu: u64, block: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[0..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&(tag as u64).to_le_bytes());
    key[16..24].copy_from_slice(&mu.to_le_bytes());
    key[24..32].copy_from_slice(&block.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

/// Standard circularly-symmetric complex Gaussian (unit variance total).
fn ccsg(rng: &mut ChaCha8Rng) -> Complex64 {
    // Box-Muller; two uniforms per component pair.
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    let r = (-u1.ln()).sqrt(); // radius so that E[re²+im²] = 1
    let phi = 2.0 * std::f64::consts::PI * u2;
    Complex64::new(r * phi.cos(), r * phi.sin())
}

fn rician_coeff(mean_gain: f64, k_factor: f64, rng: &mut ChaCha8Rng) -> Complex64 {
    let amp = mean_gain.sqrt();
    if k_factor.is_infinite() {
        // Pure line of sight.
        return Complex64::new(amp, 0.0);
    }
    let los = (k_factor / (k_factor + 1.0)).sqrt();
    let diffuse = (1.0 / (k_factor + 1.0)).sqrt();
    let z = ccsg(rng);
    // Unit-modulus LoS phase; scaling keeps E[|h|²] = mean_gain.
    Complex64::new(amp * los, 0.0) + z * (amp * diffuse)
}

/// Draws one block's Rician channel realization for user `mu_index`.
///
/// Deterministic in (seed, mu_index, block): repeated calls reproduce the
/// same coefficients bit for bit.
pub fn gen_channel(
    params: &SystemParams,
    geometry: &Geometry,
    mu_index: usize,
    block: u64,
    seed: u64,
) -> Result<ChannelRealization> {
    params.validate()?;
    geometry.validate()?;
    if mu_index >= geometry.n_users() {
        return Err(Error::InvalidParameter(format!(
            "mu_index {mu_index} out of range for {} users",
            geometry.n_users()
        )));
    }
    let k_factor = if params.rician_k_db == f64::NEG_INFINITY {
        0.0
    } else {
        10f64.powf(params.rician_k_db / 10.0)
    };
    let gain = |d: f64| -> Result<f64> {
        Ok(gain_from_db(path_loss_db(
            d,
            params.carrier_mhz,
            params.pl_coeff,
        )?))
    };
    let g_ap = gain(geometry.d_ap_u(mu_index))?;
    let g_uf_mean = gain(geometry.d_u_f(mu_index))?;
    let g_fu_mean = gain(geometry.d_f_u(mu_index))?;

    let mu = mu_index as u64;
    let mut rng_ap = stream(seed, StreamTag::FadingApU, mu, block);
    let mut rng_uf = stream(seed, StreamTag::FadingUf, mu, block);
    let mut rng_fu = stream(seed, StreamTag::FadingFu, mu, block);

    let h_ap_u: Vec<Complex64> = (0..params.n_antennas)
        .map(|_| rician_coeff(g_ap, k_factor, &mut rng_ap))
        .collect();
    let h_uf = rician_coeff(g_uf_mean, k_factor, &mut rng_uf);
    let h_fu = rician_coeff(g_fu_mean, k_factor, &mut rng_fu);

    let g_ap_u = mrt_effective_gain(&h_ap_u)?;
    Ok(ChannelRealization {
        g_ap_u,
        g_uf: h_uf.norm_sqr(),
        g_fu: h_fu.norm_sqr(),
        h_ap_u,
        h_uf,
        h_fu,
    })
}

/// Multiplies every coefficient by `1 + eps*u`, `u` uniform on [-1,1]
/// drawn independently per coefficient, and recomputes the power gains.
/// `eps = 0` returns the input unchanged.
pub fn perturb_csi(ch: &ChannelRealization, eps: f64, seed: u64) -> ChannelRealization {
    assert!(
        (0.0..1.0).contains(&eps),
        "csi error factor must lie in [0,1), got {eps}"
    );
    if eps == 0.0 {
        return ch.clone();
    }
    let mut rng = stream(seed, StreamTag::CsiError, 0, 0);
    let mut bump = |c: Complex64| -> Complex64 {
        let u: f64 = rng.gen_range(-1.0..=1.0);
        c * (1.0 + eps * u)
    };
    let h_ap_u: Vec<Complex64> = ch.h_ap_u.iter().map(|&c| bump(c)).collect();
    let h_uf = bump(ch.h_uf);
    let h_fu = bump(ch.h_fu);
    ChannelRealization {
        g_ap_u: h_ap_u.iter().map(|c| c.norm_sqr()).sum(),
        g_uf: h_uf.norm_sqr(),
        g_fu: h_fu.norm_sqr(),
        h_ap_u,
        h_uf,
        h_fu,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table_params() -> SystemParams {
        SystemParams::default()
    }

    #[test]
    fn path_loss_reference_points() {
        // log10(1) = 0 kills the distance term.
        let l1 = path_loss_db(1.0, 915.0, 22.0).unwrap();
        assert!((l1 - (20.0 * 915f64.log10() - 28.0)).abs() < 1e-12);
        assert!((l1 - 31.229).abs() < 1e-3);
        let l10 = path_loss_db(10.0, 915.0, 22.0).unwrap();
        assert!((l10 - 53.229).abs() < 1e-3);
        let l100 = path_loss_db(100.0, 915.0, 22.0).unwrap();
        assert!((l100 - 75.229).abs() < 1e-3);
    }

    #[test]
    fn path_loss_rejects_below_floor() {
        assert!(matches!(
            path_loss_db(0.05, 915.0, 22.0),
            Err(Error::DistanceBelowFloor(_, _))
        ));
    }

    #[test]
    fn gain_conversion() {
        assert_eq!(gain_from_db(0.0), 1.0);
        assert!((gain_from_db(10.0) - 0.1).abs() < 1e-15);
        assert!((gain_from_db(53.229) - 4.75e-6).abs() < 2e-8);
    }

    #[test]
    fn mrt_gain_basics() {
        let e1 = vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        assert!((mrt_effective_gain(&e1).unwrap() - 1.0).abs() < 1e-15);
        let h = vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)];
        assert!((mrt_effective_gain(&h).unwrap() - 2.0).abs() < 1e-15);
        let z = vec![Complex64::new(0.0, 0.0)];
        assert!(matches!(mrt_effective_gain(&z), Err(Error::ZeroChannel)));
    }

    #[test]
    fn mrt_dominates_random_directions() {
        // ‖h‖² is the ceiling of |h^H w|² over unit vectors w.
        let mut rng = stream(7, StreamTag::FadingApU, 0, 0);
        let h: Vec<Complex64> = (0..8).map(|_| ccsg(&mut rng)).collect();
        let ceiling = mrt_effective_gain(&h).unwrap();
        for _ in 0..10_000 {
            let w: Vec<Complex64> = (0..8).map(|_| ccsg(&mut rng)).collect();
            let wn: f64 = w.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            let dot: Complex64 = h.iter().zip(&w).map(|(a, b)| a.conj() * b / wn).sum();
            assert!(dot.norm_sqr() <= ceiling + 1e-12);
        }
    }

    #[test]
    fn pure_los_gain_is_exact() {
        let mut p = table_params();
        p.rician_k_db = f64::INFINITY;
        let g = Geometry::collinear(10.0, 8.0, 1).unwrap();
        let ch = gen_channel(&p, &g, 0, 0, 42).unwrap();
        let path = gain_from_db(path_loss_db(10.0, 915.0, 22.0).unwrap());
        assert!((ch.g_ap_u - 8.0 * path).abs() / (8.0 * path) < 1e-12);
        let path_uf = gain_from_db(path_loss_db(8.0, 915.0, 22.0).unwrap());
        assert!((ch.g_uf - path_uf).abs() / path_uf < 1e-12);
    }

    #[test]
    fn rayleigh_sentinel_is_zero_mean() {
        let mut p = table_params();
        p.rician_k_db = f64::NEG_INFINITY;
        let g = Geometry::collinear(10.0, 8.0, 1).unwrap();
        let n = 20_000;
        let mut sum = Complex64::new(0.0, 0.0);
        for b in 0..n {
            sum += gen_channel(&p, &g, 0, b, 9).unwrap().h_uf;
        }
        let path_amp = gain_from_db(path_loss_db(8.0, 915.0, 22.0).unwrap()).sqrt();
        // Mean of n zero-mean draws has std ~ path_amp/sqrt(n).
        assert!((sum / n as f64).norm() < 5.0 * path_amp / (n as f64).sqrt());
    }

    #[test]
    fn fading_mean_power_matches_path_gain() {
        let p = table_params();
        let g = Geometry::collinear(10.0, 8.0, 1).unwrap();
        let n = 100_000u64;
        let mut acc = 0.0;
        for b in 0..n {
            acc += gen_channel(&p, &g, 0, b, 3).unwrap().h_uf.norm_sqr();
        }
        let mean = acc / n as f64;
        let path = gain_from_db(path_loss_db(8.0, 915.0, 22.0).unwrap());
        assert!(
            (mean - path).abs() / path < 0.02,
            "empirical mean {mean:e} vs path gain {path:e}"
        );
    }

    #[test]
    fn reproducible_across_calls() {
        let p = table_params();
        let g = Geometry::reference(vec![[0.0, 10.0], [5.0, 5.0]]).unwrap();
        let a = gen_channel(&p, &g, 1, 17, 1234).unwrap();
        let b = gen_channel(&p, &g, 1, 17, 1234).unwrap();
        assert_eq!(a, b);
        let c = gen_channel(&p, &g, 1, 18, 1234).unwrap();
        assert_ne!(a, c);
        let d = gen_channel(&p, &g, 0, 17, 1234).unwrap();
        assert_ne!(a.h_uf, d.h_uf);
    }

    #[test]
    fn perturb_identity_and_bound() {
        let p = table_params();
        let g = Geometry::collinear(10.0, 8.0, 1).unwrap();
        let ch = gen_channel(&p, &g, 0, 0, 5).unwrap();
        let same = perturb_csi(&ch, 0.0, 99);
        assert_eq!(ch, same);
        let eps = 0.05;
        let bumped = perturb_csi(&ch, eps, 99);
        for (a, b) in ch.h_ap_u.iter().zip(&bumped.h_ap_u) {
            let ratio = b.norm() / a.norm();
            assert!(ratio >= 1.0 - eps - 1e-12 && ratio <= 1.0 + eps + 1e-12);
        }
    }
}
