//! Time-dependent parameters of the Landau problem and their key-value config format.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum MassLaw {
    Constant(f64),
    /// `m0 · e^{rate·t}` (Caldirola-Kanai type).
    Exponential { m0: f64, rate: f64 },
    /// `m0 · (1 + eps·sin(freq·t))`.
    Sinusoidal { m0: f64, eps: f64, freq: f64 },
}

impl MassLaw {
    pub fn value(&self, t: f64) -> f64 {
        match *self {
            MassLaw::Constant(m) => m,
            MassLaw::Exponential { m0, rate } => m0 * (rate * t).exp(),
            MassLaw::Sinusoidal { m0, eps, freq } => m0 * (1.0 + eps * (freq * t).sin()),
        }
    }

    pub fn derivative(&self, t: f64) -> f64 {
        match *self {
            MassLaw::Constant(_) => 0.0,
            MassLaw::Exponential { m0, rate } => m0 * rate * (rate * t).exp(),
            MassLaw::Sinusoidal { m0, eps, freq } => m0 * eps * freq * (freq * t).cos(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FrequencyLaw {
    Constant(f64),
    /// `w0 · (1 + eps·cos(freq·t))`.
    Sinusoidal { w0: f64, eps: f64, freq: f64 },
}

impl FrequencyLaw {
    pub fn value(&self, t: f64) -> f64 {
        match *self {
            FrequencyLaw::Constant(w) => w,
            FrequencyLaw::Sinusoidal { w0, eps, freq } => w0 * (1.0 + eps * (freq * t).cos()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FieldLaw {
    Constant(f64),
    /// `values[i]` on `[breaks[i-1], breaks[i])`, with `values.len() == breaks.len() + 1`.
    Piecewise { breaks: Vec<f64>, values: Vec<f64> },
}

impl FieldLaw {
    pub fn value(&self, t: f64) -> f64 {
        match self {
            FieldLaw::Constant(e) => *e,
            FieldLaw::Piecewise { breaks, values } => {
                let idx = breaks.partition_point(|&b| b <= t);
                values[idx]
            }
        }
    }

    pub fn breaks(&self) -> &[f64] {
        match self {
            FieldLaw::Constant(_) => &[],
            FieldLaw::Piecewise { breaks, .. } => breaks,
        }
    }
}

/// Physical parameters `M(t)`, `ω(t)`, `E(t)`, `q`, `B` and the invariant constant `κ` (ħ = 1).
#[derive(Debug, Clone, PartialEq)]
pub struct ModelProfile {
    pub mass: MassLaw,
    pub omega: FrequencyLaw,
    pub efield: FieldLaw,
    pub charge: f64,
    pub bfield: f64,
    pub kappa: f64,
}

impl ModelProfile {
    /// All parameters constant in time.
    pub fn constant(mass: f64, omega: f64, efield: f64, charge: f64, bfield: f64, kappa: f64) -> Result<Self> {
        Self {
            mass: MassLaw::Constant(mass),
            omega: FrequencyLaw::Constant(omega),
            efield: FieldLaw::Constant(efield),
            charge,
            bfield,
            kappa,
        }
        .validated()
    }

    /// Exponentially growing mass `m0·e^{rate·t}`.
    pub fn caldirola_kanai(m0: f64, rate: f64, omega: f64, charge: f64, bfield: f64, kappa: f64) -> Result<Self> {
        Self {
            mass: MassLaw::Exponential { m0, rate },
            omega: FrequencyLaw::Constant(omega),
            efield: FieldLaw::Constant(0.0),
            charge,
            bfield,
            kappa,
        }
        .validated()
    }

    /// Sinusoidally modulated frequency `w0(1 + eps·cos(freq·t))`.
    pub fn modulated_frequency(
        mass: f64,
        w0: f64,
        eps: f64,
        freq: f64,
        charge: f64,
        bfield: f64,
        kappa: f64,
    ) -> Result<Self> {
        Self {
            mass: MassLaw::Constant(mass),
            omega: FrequencyLaw::Sinusoidal { w0, eps, freq },
            efield: FieldLaw::Constant(0.0),
            charge,
            bfield,
            kappa,
        }
        .validated()
    }

    pub fn validated(self) -> Result<Self> {
        if !(self.kappa > 0.0) {
            return Err(Error::Config(format!("kappa must be positive, got {}", self.kappa)));
        }
        match self.mass {
            MassLaw::Constant(m) if !(m > 0.0) => {
                return Err(Error::Config(format!("mass must be positive, got {m}")))
            }
            MassLaw::Exponential { m0, .. } if !(m0 > 0.0) => {
                return Err(Error::Config(format!("mass must be positive, got {m0}")))
            }
            MassLaw::Sinusoidal { m0, eps, .. } if !(m0 > 0.0) || eps.abs() >= 1.0 => {
                return Err(Error::Config("sinusoidal mass needs m0 > 0 and |eps| < 1".into()))
            }
            _ => {}
        }
        match self.omega {
            FrequencyLaw::Constant(w) if !(w > 0.0) => {
                return Err(Error::Config(format!("omega must be positive, got {w}")))
            }
            FrequencyLaw::Sinusoidal { w0, eps, .. } if !(w0 > 0.0) || eps.abs() >= 1.0 => {
                return Err(Error::Config("modulated omega needs w0 > 0 and |eps| < 1".into()))
            }
            _ => {}
        }
        if let FieldLaw::Piecewise { breaks, values } = &self.efield {
            if values.len() != breaks.len() + 1 || breaks.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Config(
                    "piecewise field needs ascending breaks and one more value than breaks".into(),
                ));
            }
        }
        Ok(self)
    }

    pub fn mass_at(&self, t: f64) -> f64 {
        self.mass.value(t)
    }

    pub fn mass_rate(&self, t: f64) -> f64 {
        self.mass.derivative(t)
    }

    pub fn omega_at(&self, t: f64) -> f64 {
        self.omega.value(t)
    }

    pub fn efield_at(&self, t: f64) -> f64 {
        self.efield.value(t)
    }

    /// Cyclotron frequency `qB / M(t)`.
    pub fn cyclotron(&self, t: f64) -> f64 {
        self.charge * self.bfield / self.mass_at(t)
    }

    /// General frequency `Ω(t) = sqrt(ω² + ω_c²/4)`.
    pub fn big_omega(&self, t: f64) -> f64 {
        let w = self.omega_at(t);
        let wc = self.cyclotron(t);
        (w * w + 0.25 * wc * wc).sqrt()
    }

    /// Envelope value at which `ρ̈ = 0` when all parameters are frozen at `t`.
    pub fn stationary_rho(&self, t: f64) -> f64 {
        (self.kappa / (self.mass_at(t) * self.big_omega(t))).sqrt()
    }

    /// Parses the key-value profile format.
    ///
    /// ```text
    /// # comment
    /// kind = constant            # constant | caldirola-kanai | modulated-frequency | modulated-mass
    /// mass = 1.0                 # M, or m0 for the time-dependent kinds
    /// omega = 1.0                # ω, or w0 for modulated-frequency
    /// rate = 0.1                 # caldirola-kanai only
    /// eps = 0.2                  # modulated kinds
    /// freq = 2.0                 # modulated kinds
    /// efield = 0.0               # constant E
    /// efield_breaks = 1.0, 2.0   # optional piecewise E
    /// efield_values = 0, 0.5, 0  # one more entry than breaks
    /// charge = 1.0
    /// bfield = 0.5
    /// kappa = 1.0
    /// ```
    pub fn from_config_str(text: &str) -> Result<Self> {
        let mut kv = std::collections::BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", lineno + 1)))?;
            kv.insert(key.trim().to_string(), (lineno + 1, value.trim().to_string()));
        }
        let num = |key: &str, default: Option<f64>| -> Result<f64> {
            match kv.get(key) {
                Some((line, v)) => v
                    .parse::<f64>()
                    .map_err(|_| Error::Config(format!("line {line}: field `{key}`: cannot parse `{v}` as a number"))),
                None => default.ok_or_else(|| Error::Config(format!("missing field `{key}`"))),
            }
        };
        let list = |key: &str| -> Result<Option<Vec<f64>>> {
            match kv.get(key) {
                Some((line, v)) => v
                    .split(',')
                    .map(|s| {
                        s.trim().parse::<f64>().map_err(|_| {
                            Error::Config(format!("line {line}: field `{key}`: cannot parse `{}`", s.trim()))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
                    .map(Some),
                None => Ok(None),
            }
        };
        let kind = kv.get("kind").map(|(_, v)| v.as_str()).unwrap_or("constant");
        let mass0 = num("mass", Some(1.0))?;
        let omega0 = num("omega", Some(1.0))?;
        let mass = match kind {
            "constant" | "modulated-frequency" => MassLaw::Constant(mass0),
            "caldirola-kanai" => MassLaw::Exponential {
                m0: mass0,
                rate: num("rate", None)?,
            },
            "modulated-mass" => MassLaw::Sinusoidal {
                m0: mass0,
                eps: num("eps", None)?,
                freq: num("freq", Some(1.0))?,
            },
            other => return Err(Error::Config(format!("field `kind`: unknown profile kind `{other}`"))),
        };
        let omega = match kind {
            "modulated-frequency" => FrequencyLaw::Sinusoidal {
                w0: omega0,
                eps: num("eps", None)?,
                freq: num("freq", Some(1.0))?,
            },
            _ => FrequencyLaw::Constant(omega0),
        };
        let efield = match (list("efield_breaks")?, list("efield_values")?) {
            (Some(breaks), Some(values)) => FieldLaw::Piecewise { breaks, values },
            (None, None) => FieldLaw::Constant(num("efield", Some(0.0))?),
            _ => {
                return Err(Error::Config(
                    "fields `efield_breaks` and `efield_values` must be given together".into(),
                ))
            }
        };
        Self {
            mass,
            omega,
            efield,
            charge: num("charge", Some(1.0))?,
            bfield: num("bfield", Some(0.0))?,
            kappa: num("kappa", Some(1.0))?,
        }
        .validated()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_frequencies() {
        let p = ModelProfile::constant(2.0, 1.5, 0.0, 1.0, 2.0, 1.0).unwrap();
        assert_eq!(p.cyclotron(0.0), 1.0);
        assert!((p.big_omega(3.0) - (2.25f64 + 0.25).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn mass_derivatives_match_finite_differences() {
        let laws = [
            MassLaw::Exponential { m0: 1.3, rate: 0.2 },
            MassLaw::Sinusoidal { m0: 1.0, eps: 0.3, freq: 2.0 },
        ];
        for law in laws {
            for &t in &[0.0, 0.7, 3.1] {
                let h = 1e-6;
                let fd = (law.value(t + h) - law.value(t - h)) / (2.0 * h);
                assert!((fd - law.derivative(t)).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn piecewise_field_lookup() {
        let f = FieldLaw::Piecewise {
            breaks: vec![1.0, 2.0],
            values: vec![0.0, 3.0, 1.0],
        };
        assert_eq!(f.value(0.5), 0.0);
        assert_eq!(f.value(1.0), 3.0);
        assert_eq!(f.value(2.5), 1.0);
    }

    #[test]
    fn config_round_trip_and_errors() {
        let p = ModelProfile::from_config_str(
            "kind = caldirola-kanai\nmass = 1.0\nrate = 0.05 # growth\nomega = 2\nkappa = 0.5\nbfield = 1\n",
        )
        .unwrap();
        assert_eq!(p.mass, MassLaw::Exponential { m0: 1.0, rate: 0.05 });
        assert_eq!(p.kappa, 0.5);

        let err = ModelProfile::from_config_str("mass = 1\nomega = abc\n").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        assert!(err.to_string().contains("omega"));
        assert!(ModelProfile::from_config_str("kind = nope").is_err());
        assert!(ModelProfile::from_config_str("kappa = -1").is_err());
        assert!(ModelProfile::from_config_str("no equals sign").is_err());
        let p = ModelProfile::from_config_str("efield_breaks = 1, 2\nefield_values = 0, 1, 0\n").unwrap();
        assert_eq!(p.efield.breaks(), &[1.0, 2.0]);
    }
}
