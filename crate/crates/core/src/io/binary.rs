//! Little-endian binary trajectory and checkpoint files.
//!
//! Both start with the magic bytes `AFLW`, a `u32` format version and the
//! grid shape as two `u32`s. A checkpoint continues with `t, α, η, λ, ε, δ`
//! and one state. A trajectory continues with `α, η, λ, ε, δ`, the per-step
//! energy records, the snapshots and finally the configuration as JSON.
//! Field arrays are real-space values, velocity components first and then the
//! stress upper triangle, each row-major.

use std::path::Path;

use crate::error::{Error, Result};
use crate::fields::{StressField, VelocityField};
use crate::solver::{SimConfig, Snapshot, SolverState, StepRecord, Trajectory};
use crate::spectral::{Grid, ScalarField};

pub const MAGIC: &[u8; 4] = b"AFLW";
pub const FORMAT_VERSION: u32 = 1;

/// Header fields of a checkpoint.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CheckpointHeader {
    pub grid: Grid,
    pub t: f64,
    pub alpha: f64,
    pub eta: f64,
    pub lambda: f64,
    pub epsilon: f64,
    pub delta: f64,
}

impl CheckpointHeader {
    pub fn from_config(config: &SimConfig, t: f64) -> Result<Self> {
        Ok(CheckpointHeader {
            grid: config.grid()?,
            t,
            alpha: config.alpha,
            eta: config.eta,
            lambda: config.lambda,
            epsilon: config.epsilon,
            delta: config.delta,
        })
    }
}

struct Writer(Vec<u8>);

impl Writer {
    fn start(grid: Grid) -> Self {
        let mut w = Writer(Vec::new());
        w.0.extend_from_slice(MAGIC);
        w.u32(FORMAT_VERSION);
        w.u32(grid.dim() as u32);
        w.u32(grid.n() as u32);
        w
    }

    fn u32(&mut self, v: u32) {
        self.0.extend_from_slice(&v.to_le_bytes());
    }

    fn u64(&mut self, v: u64) {
        self.0.extend_from_slice(&v.to_le_bytes());
    }

    fn f64(&mut self, v: f64) {
        self.0.extend_from_slice(&v.to_le_bytes());
    }

    fn field(&mut self, f: &ScalarField) {
        for v in f.values().iter() {
            self.f64(*v);
        }
    }

    fn state(&mut self, u: &VelocityField, sigma: &StressField) {
        for c in u.components() {
            self.field(c);
        }
        for e in sigma.entries() {
            self.field(e);
        }
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self.pos + n;
        if end > self.bytes.len() {
            return Err(Error::Truncated {
                expected: end as u64,
                found: self.bytes.len() as u64,
            });
        }
        let out = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(out)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn f64(&mut self) -> Result<f64> {
        Ok(f64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    /// Checks that `count` items of `size` bytes are present before
    /// allocating for them.
    fn require(&self, count: u64, size: u64) -> Result<()> {
        let need = count
            .checked_mul(size)
            .and_then(|b| b.checked_add(self.pos as u64))
            .ok_or_else(|| Error::Format("implausible element count".into()))?;
        if need > self.bytes.len() as u64 {
            return Err(Error::Truncated {
                expected: need,
                found: self.bytes.len() as u64,
            });
        }
        Ok(())
    }

    fn header(&mut self) -> Result<Grid> {
        let magic = self.take(4).map_err(|_| Error::Format("file too short for magic bytes".into()))?;
        if magic != MAGIC {
            return Err(Error::Format(format!(
                "bad magic bytes {:?}, expected {:?}",
                String::from_utf8_lossy(magic),
                "AFLW"
            )));
        }
        let version = self.u32()?;
        if version != FORMAT_VERSION {
            return Err(Error::Version {
                found: version,
                expected: FORMAT_VERSION,
            });
        }
        let dim = self.u32()? as usize;
        let n = self.u32()? as usize;
        Grid::new(dim, n).map_err(|e| Error::Format(format!("invalid grid in header: {e}")))
    }

    fn field(&mut self, grid: Grid) -> Result<ScalarField> {
        let raw = self.take(8 * grid.len())?;
        let values = raw
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
            .collect();
        ScalarField::from_real(grid, values).map_err(|e| Error::Format(e.to_string()))
    }

    fn state(&mut self, grid: Grid) -> Result<(VelocityField, StressField)> {
        let u = (0..grid.dim()).map(|_| self.field(grid)).collect::<Result<Vec<_>>>()?;
        let s = (0..grid.sym_len()).map(|_| self.field(grid)).collect::<Result<Vec<_>>>()?;
        Ok((VelocityField::new(u)?, StressField::new(s)?))
    }

    fn finish(&self) -> Result<()> {
        if self.pos != self.bytes.len() {
            return Err(Error::Format(format!(
                "{} trailing bytes after payload",
                self.bytes.len() - self.pos
            )));
        }
        Ok(())
    }
}

fn read_file(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| Error::io(path, e))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

pub fn encode_checkpoint(header: &CheckpointHeader, state: &SolverState) -> Vec<u8> {
    let mut w = Writer::start(header.grid);
    for v in [header.t, header.alpha, header.eta, header.lambda, header.epsilon, header.delta] {
        w.f64(v);
    }
    w.state(&state.u, &state.sigma);
    w.0
}

pub fn decode_checkpoint(bytes: &[u8]) -> Result<(CheckpointHeader, SolverState)> {
    let mut r = Reader { bytes, pos: 0 };
    let grid = r.header()?;
    let mut h = [0.0; 6];
    for v in h.iter_mut() {
        *v = r.f64()?;
    }
    let (u, sigma) = r.state(grid)?;
    r.finish()?;
    let header = CheckpointHeader {
        grid,
        t: h[0],
        alpha: h[1],
        eta: h[2],
        lambda: h[3],
        epsilon: h[4],
        delta: h[5],
    };
    Ok((
        header,
        SolverState {
            t: header.t,
            u,
            sigma,
            step_count: 0,
        },
    ))
}

pub fn write_checkpoint(path: impl AsRef<Path>, header: &CheckpointHeader, state: &SolverState) -> Result<()> {
    write_file(path.as_ref(), &encode_checkpoint(header, state))
}

pub fn read_checkpoint(path: impl AsRef<Path>) -> Result<(CheckpointHeader, SolverState)> {
    decode_checkpoint(&read_file(path.as_ref())?)
}

pub fn encode_trajectory(traj: &Trajectory) -> Result<Vec<u8>> {
    let c = &traj.config;
    let mut w = Writer::start(traj.grid());
    for v in [c.alpha, c.eta, c.lambda, c.epsilon, c.delta] {
        w.f64(v);
    }
    w.u64(traj.steps.len() as u64);
    for s in &traj.steps {
        w.f64(s.t);
        w.f64(s.energy);
        w.f64(s.dissipation);
    }
    w.u64(traj.snapshots.len() as u64);
    for s in &traj.snapshots {
        w.f64(s.t);
        w.f64(s.energy);
        w.state(&s.u, &s.sigma);
    }
    let json = super::emit_config(c)?;
    w.u64(json.len() as u64);
    w.0.extend_from_slice(json.as_bytes());
    Ok(w.0)
}

pub fn decode_trajectory(bytes: &[u8]) -> Result<Trajectory> {
    let mut r = Reader { bytes, pos: 0 };
    let grid = r.header()?;
    for _ in 0..5 {
        r.f64()?;
    }
    let n_steps = r.u64()?;
    r.require(n_steps, 24)?;
    let steps = (0..n_steps)
        .map(|_| {
            Ok(StepRecord {
                t: r.f64()?,
                energy: r.f64()?,
                dissipation: r.f64()?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let n_snap = r.u64()?;
    if n_snap == 0 {
        return Err(Error::Format("trajectory without snapshots".into()));
    }
    let per_snap = 16 + 8 * ((grid.dim() + grid.sym_len()) * grid.len()) as u64;
    r.require(n_snap, per_snap)?;
    let mut snapshots = Vec::with_capacity(n_snap as usize);
    for _ in 0..n_snap {
        let t = r.f64()?;
        let energy = r.f64()?;
        let (u, sigma) = r.state(grid)?;
        snapshots.push(Snapshot { t, u, sigma, energy });
    }
    let len = r.u64()?;
    r.require(len, 1)?;
    let json = std::str::from_utf8(r.take(len as usize)?)
        .map_err(|_| Error::Format("configuration block is not UTF-8".into()))?;
    let config = super::parse_config_str(json)?;
    r.finish()?;
    Ok(Trajectory {
        config,
        snapshots,
        steps,
    })
}

pub fn write_trajectory(traj: &Trajectory, path: impl AsRef<Path>) -> Result<()> {
    write_file(path.as_ref(), &encode_trajectory(traj)?)
}

pub fn read_trajectory(path: impl AsRef<Path>) -> Result<Trajectory> {
    decode_trajectory(&read_file(path.as_ref())?)
}
