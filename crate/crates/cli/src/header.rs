//! Fixed-size header for amplified key files.
//!
//! Layout (little endian): magic (8), version u32, reserved u32, n u64, m u64,
//! d u64, padding u64, body_bits u64, record length u32, reserved u32, then
//! the family record zero-padded to [`RECORD_BYTES`].

use std::str::FromStr;

use dualhash::families::FamilySpec;

use crate::CliError;

pub const MAGIC: [u8; 8] = *b"DUALHASH";
pub const VERSION: u32 = 1;
pub const RECORD_BYTES: usize = 448;
pub const HEADER_BYTES: usize = 64 + RECORD_BYTES;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeyFileHeader {
    pub version: u32,
    /// Input bits hashed, before padding.
    pub n: u64,
    pub m: u64,
    pub d: u64,
    pub family: FamilySpec,
    /// Zero bits appended to the input.
    pub padding: u64,
    /// Bits in the body that follows.
    pub body_bits: u64,
}

impl KeyFileHeader {
    pub fn body_bytes(&self) -> usize {
        self.body_bits.div_ceil(8) as usize
    }

    pub fn to_bytes(&self) -> Result<Vec<u8>, CliError> {
        let record = self.family.to_string();
        if record.len() > RECORD_BYTES {
            return Err(CliError::Usage(format!(
                "family record of {} bytes does not fit the header",
                record.len()
            )));
        }
        let mut out = Vec::with_capacity(HEADER_BYTES);
        out.extend_from_slice(&MAGIC);
        out.extend_from_slice(&self.version.to_le_bytes());
        out.extend_from_slice(&0u32.to_le_bytes());
        for v in [self.n, self.m, self.d, self.padding, self.body_bits] {
            out.extend_from_slice(&v.to_le_bytes());
        }
        out.extend_from_slice(&(record.len() as u32).to_le_bytes());
        out.extend_from_slice(&0u32.to_le_bytes());
        out.extend_from_slice(record.as_bytes());
        out.resize(HEADER_BYTES, 0);
        Ok(out)
    }

    pub fn parse(bytes: &[u8]) -> Result<Self, CliError> {
        let bad = |msg: &str| CliError::BadKeyFile(msg.to_string());
        if bytes.len() < HEADER_BYTES {
            return Err(bad("shorter than the header"));
        }
        if bytes[..8] != MAGIC {
            return Err(bad("wrong magic"));
        }
        let u32_at = |o: usize| u32::from_le_bytes(bytes[o..o + 4].try_into().unwrap());
        let u64_at = |o: usize| u64::from_le_bytes(bytes[o..o + 8].try_into().unwrap());
        let version = u32_at(8);
        if version != VERSION {
            return Err(bad(&format!("unsupported version {version}")));
        }
        let len = u32_at(56) as usize;
        if len > RECORD_BYTES {
            return Err(bad("record length out of range"));
        }
        let record =
            std::str::from_utf8(&bytes[64..64 + len]).map_err(|_| bad("record is not UTF-8"))?;
        let family = FamilySpec::from_str(record).map_err(|e| bad(&e.to_string()))?;
        Ok(KeyFileHeader {
            version,
            n: u64_at(16),
            m: u64_at(24),
            d: u64_at(32),
            padding: u64_at(40),
            body_bits: u64_at(48),
            family,
        })
    }
}
