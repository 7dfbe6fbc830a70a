//! Prefix multiple harmonic tables
//! `A^{(d)}_n = Σ_{i_1 < … < i_d < n} Π w(i_j)^{-2}` and their binary cache.

use std::fs;
use std::io::{Cursor, Read};
use std::path::{Path, PathBuf};

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::composition::Parity;
use crate::error::SeriesError;

const MAGIC: &[u8; 4] = b"MZVT";
const VERSION: u32 = 1;

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "MZV_CACHE_DIR";

/// Exact values `A_n` for the first `limit` indices of `parity`
/// (`n = 1..=N` for all integers, `n = 0..N` for odd weights).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MhnTable {
    pub depth: u32,
    pub limit: u64,
    pub parity: Parity,
    values: Vec<BigRational>,
}

impl MhnTable {
    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    /// `A_n`, or `None` outside the table.
    pub fn get(&self, n: u64) -> Option<&BigRational> {
        let first = self.parity.first_index();
        n.checked_sub(first)
            .and_then(|i| self.values.get(i as usize))
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&VERSION.to_be_bytes());
        out.extend_from_slice(&self.depth.to_be_bytes());
        out.push(self.parity.code());
        out.extend_from_slice(&self.limit.to_be_bytes());
        for v in &self.values {
            for part in [v.numer(), v.denom()] {
                let bytes = part.magnitude().to_bytes_be();
                out.extend_from_slice(&(bytes.len() as u32).to_be_bytes());
                out.extend_from_slice(&bytes);
            }
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, SeriesError> {
        let bad = |m: &str| SeriesError::Cache(m.to_string());
        let mut cur = Cursor::new(bytes);
        let mut magic = [0u8; 4];
        cur.read_exact(&mut magic)
            .map_err(|_| bad("truncated header"))?;
        if &magic != MAGIC {
            return Err(bad("bad magic"));
        }
        let read_u32 = |c: &mut Cursor<&[u8]>| -> Result<u32, SeriesError> {
            let mut b = [0u8; 4];
            c.read_exact(&mut b).map_err(|_| bad("truncated"))?;
            Ok(u32::from_be_bytes(b))
        };
        let version = read_u32(&mut cur)?;
        if version != VERSION {
            return Err(bad(&format!("unsupported version {version}")));
        }
        let depth = read_u32(&mut cur)?;
        let mut p = [0u8; 1];
        cur.read_exact(&mut p).map_err(|_| bad("truncated"))?;
        let parity = match p[0] {
            0 => Parity::All,
            1 => Parity::Odd,
            x => return Err(bad(&format!("bad parity code {x}"))),
        };
        let mut l = [0u8; 8];
        cur.read_exact(&mut l).map_err(|_| bad("truncated"))?;
        let limit = u64::from_be_bytes(l);
        let mut values = Vec::with_capacity(limit as usize);
        for _ in 0..limit {
            let mut parts = [BigInt::zero(), BigInt::zero()];
            for part in parts.iter_mut() {
                let len = read_u32(&mut cur)? as usize;
                let mut buf = vec![0u8; len];
                cur.read_exact(&mut buf)
                    .map_err(|_| bad("truncated entry"))?;
                *part = BigInt::from_biguint(Sign::Plus, BigUint::from_bytes_be(&buf));
            }
            let [num, den] = parts;
            if den.is_zero() {
                return Err(bad("zero denominator"));
            }
            values.push(BigRational::new(num, den));
        }
        if (cur.position() as usize) != bytes.len() {
            return Err(bad("trailing bytes"));
        }
        Ok(MhnTable {
            depth,
            limit,
            parity,
            values,
        })
    }
}

/// Builds the table by the forward recurrence over depth:
/// `A^{(d)}_n = A^{(d)}_{n-1} + A^{(d-1)}_{n-1} / w_{n-1}^2`.
pub fn prefix_mhn(depth: u32, limit: u64, parity: Parity) -> MhnTable {
    let first = parity.first_index();
    let mut row: Vec<BigRational> = vec![BigRational::one(); limit as usize];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(limit as usize);
        let mut acc = BigRational::zero();
        for i in 0..limit as usize {
            if i > 0 {
                let w = parity.weight(first + i as u64 - 1);
                acc += &row[i - 1] / BigRational::from_integer(BigInt::from(w) * w);
            }
            next.push(acc.clone());
        }
        row = next;
    }
    MhnTable {
        depth,
        limit,
        parity,
        values: row,
    }
}

fn cache_path(dir: &Path, depth: u32, limit: u64, parity: Parity) -> PathBuf {
    let p = match parity {
        Parity::All => "all",
        Parity::Odd => "odd",
    };
    dir.join(format!("mhn-{p}-d{depth}-n{limit}.mzvt"))
}

/// [`prefix_mhn`] backed by the cache directory `dir`, or by
/// `$MZV_CACHE_DIR` when `dir` is `None`. Unreadable cache files are rebuilt.
pub fn prefix_mhn_cached(
    depth: u32,
    limit: u64,
    parity: Parity,
    dir: Option<&Path>,
) -> Result<MhnTable, SeriesError> {
    let env_dir = std::env::var_os(CACHE_ENV).map(PathBuf::from);
    let Some(dir) = dir.map(Path::to_path_buf).or(env_dir) else {
        return Ok(prefix_mhn(depth, limit, parity));
    };
    let path = cache_path(&dir, depth, limit, parity);
    if let Ok(bytes) = fs::read(&path) {
        if let Ok(t) = MhnTable::from_bytes(&bytes) {
            if t.depth == depth && t.limit == limit && t.parity == parity {
                return Ok(t);
            }
        }
    }
    let t = prefix_mhn(depth, limit, parity);
    fs::create_dir_all(&dir).map_err(|e| SeriesError::Cache(e.to_string()))?;
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, t.to_bytes()).map_err(|e| SeriesError::Cache(e.to_string()))?;
    fs::rename(&tmp, &path).map_err(|e| SeriesError::Cache(e.to_string()))?;
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn examples() {
        assert!(prefix_mhn(0, 5, Parity::All)
            .values()
            .iter()
            .all(|v| v.is_one()));
        let t = prefix_mhn(1, 3, Parity::All);
        assert_eq!(t.values(), &[q(0, 1), q(1, 1), q(5, 4)]);
        assert_eq!(t.get(3), Some(&q(5, 4)));
        assert_eq!(t.get(0), None);
        let o = prefix_mhn(1, 3, Parity::Odd);
        assert_eq!(o.values(), &[q(0, 1), q(1, 1), q(10, 9)]);
        assert_eq!(o.get(0), Some(&q(0, 1)));
    }

    #[test]
    fn depth_two_by_hand() {
        // A^{(2)}_4 = 1/(1·4) + 1/(1·9) + 1/(4·9)
        let t = prefix_mhn(2, 4, Parity::All);
        assert_eq!(t.get(4), Some(&(q(1, 4) + q(1, 9) + q(1, 36))));
    }

    #[test]
    fn bytes_round_trip_and_rejects_garbage() {
        let t = prefix_mhn(2, 12, Parity::Odd);
        let b = t.to_bytes();
        assert_eq!(&b[..4], b"MZVT");
        assert_eq!(MhnTable::from_bytes(&b).unwrap(), t);
        assert!(MhnTable::from_bytes(&b[..b.len() - 1]).is_err());
        let mut bad = b.clone();
        bad[0] = b'X';
        assert!(MhnTable::from_bytes(&bad).is_err());
    }

    #[test]
    fn cache_directory_is_used() {
        let dir = std::env::temp_dir().join(format!("mzvt-test-{}", std::process::id()));
        let a = prefix_mhn_cached(2, 20, Parity::All, Some(&dir)).unwrap();
        let path = cache_path(&dir, 2, 20, Parity::All);
        assert!(path.exists());
        let b = prefix_mhn_cached(2, 20, Parity::All, Some(&dir)).unwrap();
        assert_eq!(a, b);
        fs::remove_dir_all(&dir).ok();
    }
}
