//! Binary persistence of fields and solver states.
//!
//! Layout (all little-endian): magic, format version, dim (u32), n (u64),
//! half-width (f64), [t (f64) for states], payload, and a trailing FNV-1a 64
//! checksum over everything before it.
//!
//! Field files carry the physical samples row-major (the interchange format,
//! also behind the 1D CSV export). State checkpoints carry the spectral
//! coefficients as (re, im) pairs instead: a state restored from disk must be
//! bit-identical to the one saved, and only the spectral payload survives the
//! round trip exactly (fft∘ifft is not a bit-level identity).

use std::fmt;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use wavegrow_core::field::{Field, GridSpec, State};

pub const STATE_MAGIC: &[u8; 4] = b"WGS\x01";
pub const FIELD_MAGIC: &[u8; 4] = b"WGF\x01";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug)]
pub enum CheckpointError {
    Io(std::io::Error),
    BadMagic,
    Version { found: u32, expected: u32 },
    Truncated,
    Checksum,
    BadGrid(String),
}

impl fmt::Display for CheckpointError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckpointError::Io(e) => write!(f, "io error: {e}"),
            CheckpointError::BadMagic => write!(f, "not a checkpoint file"),
            CheckpointError::Version { found, expected } => {
                write!(
                    f,
                    "incompatible format version {found} (expected {expected})"
                )
            }
            CheckpointError::Truncated => write!(f, "file truncated"),
            CheckpointError::Checksum => write!(f, "checksum mismatch (corrupt file)"),
            CheckpointError::BadGrid(msg) => write!(f, "bad grid header: {msg}"),
        }
    }
}

impl From<std::io::Error> for CheckpointError {
    fn from(e: std::io::Error) -> Self {
        CheckpointError::Io(e)
    }
}

pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

fn push_f64s(buf: &mut Vec<u8>, values: &[f64]) {
    for v in values {
        buf.extend_from_slice(&v.to_le_bytes());
    }
}

fn header(magic: &[u8; 4], grid: GridSpec) -> Vec<u8> {
    let mut buf = Vec::new();
    buf.extend_from_slice(magic);
    buf.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    buf.extend_from_slice(&(grid.dim() as u32).to_le_bytes());
    buf.extend_from_slice(&(grid.n() as u64).to_le_bytes());
    buf.extend_from_slice(&grid.half_width().to_le_bytes());
    buf
}

fn push_coeffs(buf: &mut Vec<u8>, field: &Field) {
    for z in field.coeffs() {
        buf.extend_from_slice(&z.re.to_le_bytes());
        buf.extend_from_slice(&z.im.to_le_bytes());
    }
}

pub fn save_state(state: &State, path: &Path) -> std::io::Result<()> {
    let mut buf = header(STATE_MAGIC, state.grid());
    buf.extend_from_slice(&state.t.to_le_bytes());
    push_coeffs(&mut buf, &state.u);
    push_coeffs(&mut buf, &state.ut);
    let sum = fnv1a64(&buf);
    buf.extend_from_slice(&sum.to_le_bytes());
    atomic_write(path, &buf)
}

pub fn save_field(field: &Field, path: &Path) -> std::io::Result<()> {
    let mut buf = header(FIELD_MAGIC, field.grid());
    push_f64s(&mut buf, &field.to_physical());
    let sum = fnv1a64(&buf);
    buf.extend_from_slice(&sum.to_le_bytes());
    atomic_write(path, &buf)
}

/// Write to a sibling temp file, then rename into place.
fn atomic_write(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let tmp = path.with_extension("tmp");
    {
        let mut f = File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)
}

struct Cursor<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], CheckpointError> {
        if self.pos + n > self.buf.len() {
            return Err(CheckpointError::Truncated);
        }
        let s = &self.buf[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    fn u32(&mut self) -> Result<u32, CheckpointError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64, CheckpointError> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn f64(&mut self) -> Result<f64, CheckpointError> {
        Ok(f64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn f64s(&mut self, count: usize) -> Result<Vec<f64>, CheckpointError> {
        let raw = self.take(8 * count)?;
        Ok(raw
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
            .collect())
    }
}

fn verify_and_open<'a>(
    bytes: &'a [u8],
    magic: &[u8; 4],
) -> Result<(Cursor<'a>, GridSpec), CheckpointError> {
    if bytes.len() < 8 {
        return Err(CheckpointError::Truncated);
    }
    let (body, sum_bytes) = bytes.split_at(bytes.len() - 8);
    let stored = u64::from_le_bytes(sum_bytes.try_into().unwrap());
    if fnv1a64(body) != stored {
        return Err(CheckpointError::Checksum);
    }
    let mut cur = Cursor { buf: body, pos: 0 };
    let got_magic = cur.take(4)?;
    if got_magic != magic {
        return Err(CheckpointError::BadMagic);
    }
    let version = cur.u32()?;
    if version != FORMAT_VERSION {
        return Err(CheckpointError::Version {
            found: version,
            expected: FORMAT_VERSION,
        });
    }
    let dim = cur.u32()? as usize;
    let n = cur.u64()? as usize;
    let half_width = cur.f64()?;
    let grid =
        GridSpec::new(dim, n, half_width).map_err(|e| CheckpointError::BadGrid(e.to_string()))?;
    Ok((cur, grid))
}

pub fn load_state(path: &Path) -> Result<State, CheckpointError> {
    let mut bytes = Vec::new();
    File::open(path)?.read_to_end(&mut bytes)?;
    let (mut cur, grid) = verify_and_open(&bytes, STATE_MAGIC)?;
    let t = cur.f64()?;
    let read_field = |cur: &mut Cursor| -> Result<Field, CheckpointError> {
        let raw = cur.f64s(2 * grid.points())?;
        let coeffs = raw
            .chunks_exact(2)
            .map(|c| wavegrow_core::num::Complex::new(c[0], c[1]))
            .collect();
        Ok(Field::from_coeffs(grid, coeffs))
    };
    let u = read_field(&mut cur)?;
    let ut = read_field(&mut cur)?;
    if cur.pos != cur.buf.len() {
        return Err(CheckpointError::Truncated);
    }
    Ok(State::new(u, ut, t))
}

pub fn load_field(path: &Path) -> Result<Field, CheckpointError> {
    let mut bytes = Vec::new();
    File::open(path)?.read_to_end(&mut bytes)?;
    let (mut cur, grid) = verify_and_open(&bytes, FIELD_MAGIC)?;
    let samples = cur.f64s(grid.points())?;
    if cur.pos != cur.buf.len() {
        return Err(CheckpointError::Truncated);
    }
    Ok(Field::from_physical(grid, &samples))
}

/// Initial data may come from a state or a bare field file (u_t = 0 then).
pub fn load_initial(path: &Path) -> Result<State, CheckpointError> {
    match load_state(path) {
        Ok(s) => Ok(s),
        Err(CheckpointError::BadMagic) => {
            let f = load_field(path)?;
            let grid = f.grid();
            Ok(State::new(f, Field::zero(grid), 0.0))
        }
        Err(e) => Err(e),
    }
}

/// CSV export of a 1D field: `x,value` per grid point.
pub fn export_field_csv_1d(field: &Field, path: &Path) -> std::io::Result<()> {
    let grid = field.grid();
    assert_eq!(grid.dim(), 1, "csv export is for 1D fields");
    let xs = grid.coord_table();
    let vals = field.to_physical();
    let mut out = String::from("x,value\n");
    for (x, v) in xs.iter().zip(&vals) {
        out.push_str(&crate::csvio::fmt_float(*x));
        out.push(',');
        out.push_str(&crate::csvio::fmt_float(*v));
        out.push('\n');
    }
    std::fs::write(path, out)
}
