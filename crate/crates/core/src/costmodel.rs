//! Analytic communication and computation cost of obtaining and using `n_c`
//! pseudonym certificates under the explicit, SIMPL and NOINS approaches.
//!
//! Byte volumes come straight from the wire layouts. Delays use a
//! first-order model: every transfer pays a TCP handshake, one-way
//! propagation over each hop, and serialization of payload plus per-segment
//! header bytes over each hop. Transfers are summed sequentially.
//!
//! Obtaining: the CA ships I2V messages in batches over a wired link to the
//! RSU, then over 802.11p to the vehicle. NOINS needs `n_ci = n_c / n_cs`
//! messages, the baselines need `n_c`.
//!
//! Using: each pseudonym's authentication values cross one V2V hop.
//!
//! Akil et al.'s CL-signature approach is not modelled: its sizes depend on
//! idemix parameters that are not fixed here.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::wire::{auth_values_len, batch_len, i2v_message_len, Widths, RSA_PUBLIC_KEY_LEN};
use crate::Approach;

pub const SPEED_OF_LIGHT_KM_S: f64 = 299_792.46;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub name: String,
    pub ca_rsu_distance_km: f64,
    pub propagation_speed_km_s: f64,
    pub wired_bandwidth_bps: f64,
    pub radio_bandwidth_bps: f64,
    pub rsu_vehicle_distance_m: f64,
    pub vehicle_vehicle_distance_m: f64,
    /// TCP maximum segment size.
    pub mss: usize,
    /// TCP/IP header bytes per segment.
    pub transport_header: usize,
    /// MAC/LLC header bytes per segment.
    pub link_header: usize,
    /// Round trips spent before the first data byte of a transfer.
    pub handshake_rtts: f64,
    pub batch_size: usize,
}

impl Scenario {
    fn base(name: &str, ca_rsu_distance_km: f64) -> Scenario {
        Scenario {
            name: name.into(),
            ca_rsu_distance_km,
            propagation_speed_km_s: SPEED_OF_LIGHT_KM_S,
            wired_bandwidth_bps: 1e9,
            radio_bandwidth_bps: 6e6,
            rsu_vehicle_distance_m: 300.0,
            vehicle_vehicle_distance_m: 100.0,
            mss: 1460,
            transport_header: 40,
            link_header: 34,
            handshake_rtts: 1.0,
            batch_size: crate::ca::DEFAULT_BATCH,
        }
    }

    /// CA about 5 km from the RSU.
    pub fn small_city() -> Scenario {
        Self::base("small", 5.0)
    }

    /// CA about 60 km from the RSU.
    pub fn large_city() -> Scenario {
        Self::base("large", 60.0)
    }

    pub fn by_name(name: &str) -> Result<Scenario> {
        match name {
            "small" => Ok(Self::small_city()),
            "large" => Ok(Self::large_city()),
            other => Err(Error::InvalidParameter(format!("unknown scenario `{other}`"))),
        }
    }

    /// All distances zero, so delays reduce to serialization.
    pub fn zero_distance(mut self) -> Scenario {
        self.ca_rsu_distance_km = 0.0;
        self.rsu_vehicle_distance_m = 0.0;
        self.vehicle_vehicle_distance_m = 0.0;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("propagation speed", self.propagation_speed_km_s),
            ("wired bandwidth", self.wired_bandwidth_bps),
            ("radio bandwidth", self.radio_bandwidth_bps),
        ];
        let non_negative = [
            ("CA-RSU distance", self.ca_rsu_distance_km),
            ("RSU-vehicle distance", self.rsu_vehicle_distance_m),
            ("vehicle-vehicle distance", self.vehicle_vehicle_distance_m),
            ("handshake round trips", self.handshake_rtts),
        ];
        for (what, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!("{what} must be positive")));
            }
        }
        for (what, v) in non_negative {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!("{what} must be non-negative")));
            }
        }
        if self.mss == 0 || self.batch_size == 0 {
            return Err(Error::InvalidParameter("MSS and batch size must be positive".into()));
        }
        Ok(())
    }

    fn propagation_s(&self, km: f64) -> f64 {
        km / self.propagation_speed_km_s
    }

    /// Payload plus per-segment headers.
    pub fn bytes_on_link(&self, payload: u64) -> u64 {
        let segments = payload.div_ceil(self.mss as u64);
        payload + segments * (self.transport_header + self.link_header) as u64
    }

    /// One CA → vehicle transfer of `payload` bytes.
    pub fn obtain_transfer_s(&self, payload: u64) -> f64 {
        let one_way = self.propagation_s(self.ca_rsu_distance_km)
            + self.propagation_s(self.rsu_vehicle_distance_m / 1000.0);
        let bits = self.bytes_on_link(payload) as f64 * 8.0;
        self.handshake_rtts * 2.0 * one_way
            + one_way
            + bits / self.wired_bandwidth_bps
            + bits / self.radio_bandwidth_bps
    }

    /// One vehicle → vehicle transfer of `payload` bytes.
    pub fn use_transfer_s(&self, payload: u64) -> f64 {
        let one_way = self.propagation_s(self.vehicle_vehicle_distance_m / 1000.0);
        let bits = self.bytes_on_link(payload) as f64 * 8.0;
        self.handshake_rtts * 2.0 * one_way + one_way + bits / self.radio_bandwidth_bps
    }

    /// Human-readable list of the modelling assumptions.
    pub fn assumptions(&self, widths: &Widths) -> Vec<String> {
        let mut out = vec![
            format!("CA-RSU distance {} km at {} km/s", self.ca_rsu_distance_km, self.propagation_speed_km_s),
            format!("wired link {} b/s, 802.11p link {} b/s", self.wired_bandwidth_bps, self.radio_bandwidth_bps),
            format!(
                "RSU-vehicle {} m, vehicle-vehicle {} m (upper ends of the ranges)",
                self.rsu_vehicle_distance_m, self.vehicle_vehicle_distance_m
            ),
            format!(
                "TCP MSS {} B, {} B TCP/IP + {} B MAC/LLC header per segment, {} RTT handshake per transfer",
                self.mss, self.transport_header, self.link_header, self.handshake_rtts
            ),
            format!("{} I2V messages per batch", self.batch_size),
            format!(
                "point {} B, scalar {} B, message signature {} B, explicit CA signature {} B",
                widths.point, widths.scalar, widths.message_sig, widths.explicit_sig
            ),
        ];
        if widths.explicit_sig == crate::wire::RSA_SIGNATURE_LEN {
            out.push(format!(
                "RSA-2048 CA public key {RSA_PUBLIC_KEY_LEN} B is not part of any per-certificate message"
            ));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Workload {
    pub approach: Approach,
    pub n_c: u64,
    /// Short-term certificates per CA-issued one. NOINS only.
    pub n_cs: u64,
}

impl Workload {
    pub fn new(approach: Approach, n_c: u64, n_cs: u64) -> Workload {
        Workload { approach, n_c, n_cs }
    }

    /// `n_c / n_cs`, which must divide exactly.
    pub fn n_ci(&self) -> Result<u64> {
        if self.n_cs == 0 || self.n_c % self.n_cs != 0 {
            return Err(Error::NonDivisible {
                n_c: self.n_c,
                n_cs: self.n_cs,
            });
        }
        Ok(self.n_c / self.n_cs)
    }

    /// Number of I2V messages the CA sends.
    pub fn i2v_messages(&self) -> Result<u64> {
        match self.approach {
            Approach::Noins => self.n_ci(),
            Approach::Explicit | Approach::Simpl => Ok(self.n_c),
        }
    }
}

/// Sizes of the batches needed for `messages` I2V messages.
fn batches(messages: u64, batch_size: usize) -> impl Iterator<Item = u64> {
    let b = batch_size as u64;
    let full = messages / b;
    let rest = messages % b;
    std::iter::repeat(b)
        .take(full as usize)
        .chain((rest > 0).then_some(rest))
}

pub fn obtain_bytes(w: &Workload, scenario: &Scenario, widths: &Widths) -> Result<u64> {
    let item = i2v_message_len(w.approach, widths);
    Ok(batches(w.i2v_messages()?, scenario.batch_size)
        .map(|count| batch_len(count as usize, item) as u64)
        .sum())
}

pub fn use_bytes(w: &Workload, widths: &Widths) -> u64 {
    w.n_c * auth_values_len(w.approach, widths) as u64
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Delays {
    pub obtain_s: f64,
    pub use_s: f64,
    pub total_s: f64,
}

pub fn delays(w: &Workload, scenario: &Scenario, widths: &Widths) -> Result<Delays> {
    scenario.validate()?;
    let item = i2v_message_len(w.approach, widths);
    let obtain_s = batches(w.i2v_messages()?, scenario.batch_size)
        .map(|count| scenario.obtain_transfer_s(batch_len(count as usize, item) as u64))
        .sum::<f64>();
    let use_s = w.n_c as f64 * scenario.use_transfer_s(auth_values_len(w.approach, widths) as u64);
    Ok(Delays {
        obtain_s,
        use_s,
        total_s: obtain_s + use_s,
    })
}

/// Counts of primitive operations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpCounts {
    pub point_mul: u64,
    pub point_add: u64,
    pub hash: u64,
    pub sign: u64,
    pub verify: u64,
    pub encrypt: u64,
    pub decrypt: u64,
    /// AES block evaluations for linkage values.
    pub prf: u64,
}

impl OpCounts {
    pub fn scaled(&self, k: u64) -> OpCounts {
        OpCounts {
            point_mul: self.point_mul * k,
            point_add: self.point_add * k,
            hash: self.hash * k,
            sign: self.sign * k,
            verify: self.verify * k,
            encrypt: self.encrypt * k,
            decrypt: self.decrypt * k,
            prf: self.prf * k,
        }
    }

    pub fn plus(&self, o: &OpCounts) -> OpCounts {
        OpCounts {
            point_mul: self.point_mul + o.point_mul,
            point_add: self.point_add + o.point_add,
            hash: self.hash + o.hash,
            sign: self.sign + o.sign,
            verify: self.verify + o.verify,
            encrypt: self.encrypt + o.encrypt,
            decrypt: self.decrypt + o.decrypt,
            prf: self.prf + o.prf,
        }
    }

    pub fn is_zero(&self) -> bool {
        *self == OpCounts::default()
    }
}

/// `per_ci·n_ci + per_c·n_c`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearCost {
    pub per_ci: OpCounts,
    pub per_c: OpCounts,
}

impl LinearCost {
    pub fn eval(&self, n_ci: u64, n_c: u64) -> OpCounts {
        self.per_ci.scaled(n_ci).plus(&self.per_c.scaled(n_c))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoleCosts<T> {
    pub ca: T,
    pub vehicle: T,
    pub receiver: T,
}

/// Per-role operation counts as linear forms in `n_ci` and `n_c`.
/// Message signing and verification, common to all approaches, are left
/// out; `verify` on the receiver side is certificate verification.
pub fn op_table(approach: Approach) -> RoleCosts<LinearCost> {
    let ops = |point_mul, point_add, hash| OpCounts {
        point_mul,
        point_add,
        hash,
        ..OpCounts::default()
    };
    match approach {
        Approach::Explicit => RoleCosts {
            ca: LinearCost {
                per_ci: OpCounts::default(),
                per_c: OpCounts { sign: 1, encrypt: 1, ..ops(1, 1, 0) },
            },
            vehicle: LinearCost {
                per_ci: OpCounts::default(),
                per_c: OpCounts { verify: 1, decrypt: 1, ..ops(1, 0, 0) },
            },
            receiver: LinearCost {
                per_ci: OpCounts::default(),
                per_c: OpCounts { verify: 1, ..ops(0, 0, 0) },
            },
        },
        Approach::Simpl => RoleCosts {
            ca: LinearCost {
                per_ci: OpCounts::default(),
                per_c: OpCounts { encrypt: 1, ..ops(1, 1, 1) },
            },
            vehicle: LinearCost {
                per_ci: OpCounts::default(),
                per_c: OpCounts { decrypt: 1, ..ops(2, 1, 1) },
            },
            receiver: LinearCost {
                per_ci: OpCounts::default(),
                per_c: ops(1, 1, 1),
            },
        },
        Approach::Noins => RoleCosts {
            ca: LinearCost {
                per_ci: OpCounts { encrypt: 1, ..ops(2, 2, 2) },
                per_c: OpCounts::default(),
            },
            vehicle: LinearCost {
                // issuance equation (3 mul) plus the sks/pks consistency check (1 mul)
                per_ci: OpCounts { decrypt: 1, ..ops(4, 2, 2) },
                per_c: OpCounts { prf: 1, ..ops(4, 2, 2) },
            },
            receiver: LinearCost {
                per_ci: OpCounts::default(),
                per_c: ops(4, 4, 3),
            },
        },
    }
}

pub fn op_counts(approach: Approach, n_c: u64, n_cs: u64) -> Result<RoleCosts<OpCounts>> {
    let n_ci = match approach {
        Approach::Noins => Workload::new(approach, n_c, n_cs).n_ci()?,
        _ => 0,
    };
    let t = op_table(approach);
    Ok(RoleCosts {
        ca: t.ca.eval(n_ci, n_c),
        vehicle: t.vehicle.eval(n_ci, n_c),
        receiver: t.receiver.eval(n_ci, n_c),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CostRow {
    pub approach: Approach,
    pub n_c: u64,
    pub i2v_messages: u64,
    pub obtain_bytes: u64,
    pub use_bytes: u64,
    pub obtain_delay_s: f64,
    pub use_delay_s: f64,
    pub total_delay_s: f64,
    pub ops: RoleCosts<OpCounts>,
}

impl CostRow {
    pub fn total_bytes(&self) -> u64 {
        self.obtain_bytes + self.use_bytes
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CostReport {
    pub scenario: Scenario,
    pub widths: Widths,
    pub n_cs: u64,
    pub assumptions: Vec<String>,
    pub not_modelled: Vec<String>,
    pub rows: Vec<CostRow>,
}

pub fn cost_row(w: &Workload, scenario: &Scenario, widths: &Widths) -> Result<CostRow> {
    let d = delays(w, scenario, widths)?;
    Ok(CostRow {
        approach: w.approach,
        n_c: w.n_c,
        i2v_messages: w.i2v_messages()?,
        obtain_bytes: obtain_bytes(w, scenario, widths)?,
        use_bytes: use_bytes(w, widths),
        obtain_delay_s: d.obtain_s,
        use_delay_s: d.use_s,
        total_delay_s: d.total_s,
        ops: op_counts(w.approach, w.n_c, w.n_cs)?,
    })
}

/// Rows for every approach and every `n_c`, ordered by `n_c` then
/// explicit, SIMPL, NOINS.
pub fn compare(n_c: &[u64], n_cs: u64, scenario: &Scenario, widths: &Widths) -> Result<CostReport> {
    scenario.validate()?;
    let mut rows = Vec::new();
    for &n in n_c {
        for approach in Approach::ALL {
            rows.push(cost_row(&Workload::new(approach, n, n_cs), scenario, widths)?);
        }
    }
    Ok(CostReport {
        scenario: scenario.clone(),
        widths: *widths,
        n_cs,
        assumptions: scenario.assumptions(widths),
        not_modelled: vec![
            "Akil et al. (CL signatures): sizes depend on idemix parameters not fixed here".into(),
        ],
        rows,
    })
}
