/// Which processing mode a solved operating point uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Local,
    Offload,
}

/// One user's optimized operating point for one block: mode, time
/// splits, power-splitting ratio, transmit power, and the energy ledger.
///
/// Local solutions leave the offload slots at zero and vice versa.
/// `e_u` may be negative when harvested plus stored energy exceeds the
/// consumption.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeSolution {
    pub mode: Mode,
    /// Reception/harvest slot, s.
    pub tau_ipt: f64,
    /// Local computing slot, s (local mode only).
    pub tau_cpt: f64,
    /// Uplink offload slot, s (offload mode only).
    pub tau_uf: f64,
    /// Fog computing slot, s (offload mode only).
    pub tau_fogcpt: f64,
    /// Result feedback slot, s (offload mode only).
    pub tau_fu: f64,
    /// Power-splitting ratio routed to the decoder, in (0,1).
    pub rho: f64,
    /// User transmit power, W (offload mode only, else 0).
    pub p_uf: f64,
    /// Decoding energy, J.
    pub e_id: f64,
    /// Local computing energy, J.
    pub e_cpt: f64,
    /// Offload transmit energy, J.
    pub e_uf: f64,
    /// Harvested energy including the broadcast credit, J.
    pub e_eh: f64,
    /// Net required energy, J.
    pub e_u: f64,
}

impl ModeSolution {
    /// Sum of the slots this mode actually occupies, s.
    pub fn active_time(&self) -> f64 {
        match self.mode {
            Mode::Local => self.tau_ipt + self.tau_cpt,
            Mode::Offload => self.tau_ipt + self.tau_uf + self.tau_fogcpt + self.tau_fu,
        }
    }
}
