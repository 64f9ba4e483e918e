//! Ciphertext container.
//!
//! ```text
//! offset  size  field
//! 0       4     magic "DNAC"
//! 4       1     version (1)
//! 5       1     cipher id: 1 legacy, 2 improved, 3 Bio-SNOW stream
//! 6       1     parameter: n for legacy, 1 for improved, 0 for Bio-SNOW
//! 7       8     original length, little-endian u64
//! 15      1+k   Bio-SNOW only: IV length k, then k IV bytes
//! ...           payload
//! ```

use crate::error::CliError;

pub const MAGIC: [u8; 4] = *b"DNAC";
pub const VERSION: u8 = 1;
const FIXED_HEADER: usize = 15;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum CipherId {
    Legacy = 1,
    Improved = 2,
    BioSnow = 3,
}

impl CipherId {
    pub fn from_byte(b: u8) -> Option<Self> {
        match b {
            1 => Some(CipherId::Legacy),
            2 => Some(CipherId::Improved),
            3 => Some(CipherId::BioSnow),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CipherId::Legacy => "legacy",
            CipherId::Improved => "improved",
            CipherId::BioSnow => "biosnow",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Container {
    pub cipher: CipherId,
    pub param: u8,
    pub original_len: u64,
    pub iv: Option<Vec<u8>>,
    pub payload: Vec<u8>,
}

fn malformed(msg: impl Into<String>) -> CliError {
    CliError::Container(msg.into())
}

impl Container {
    /// Bytes of payload the cipher produces for `original_len` input bytes.
    fn expected_payload(cipher: CipherId, param: u8, original_len: u64) -> Result<u64, CliError> {
        let block = match cipher {
            CipherId::BioSnow => return Ok(original_len),
            CipherId::Improved if param != 1 => {
                return Err(malformed(format!("improved cipher with parameter {param}, expected 1")))
            }
            CipherId::Legacy if param == 0 => return Err(malformed("legacy cipher with n = 0")),
            _ => 8 * param as u64 * param as u64,
        };
        Ok(original_len.div_ceil(block) * block)
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(FIXED_HEADER + 33 + self.payload.len());
        out.extend_from_slice(&MAGIC);
        out.push(VERSION);
        out.push(self.cipher as u8);
        out.push(self.param);
        out.extend_from_slice(&self.original_len.to_le_bytes());
        if let Some(iv) = &self.iv {
            out.push(iv.len() as u8);
            out.extend_from_slice(iv);
        }
        out.extend_from_slice(&self.payload);
        out
    }

    pub fn parse(data: &[u8]) -> Result<Self, CliError> {
        if data.len() < FIXED_HEADER {
            return Err(malformed(format!("{} bytes is shorter than the header", data.len())));
        }
        if data[..4] != MAGIC {
            return Err(malformed("bad magic"));
        }
        if data[4] != VERSION {
            return Err(malformed(format!("unsupported version {}", data[4])));
        }
        let cipher = CipherId::from_byte(data[5]).ok_or_else(|| malformed(format!("unknown cipher id {}", data[5])))?;
        let param = data[6];
        let original_len = u64::from_le_bytes(data[7..15].try_into().expect("8 bytes"));
        let mut pos = FIXED_HEADER;
        let iv = if cipher == CipherId::BioSnow {
            let len = *data.get(pos).ok_or_else(|| malformed("missing IV length"))? as usize;
            pos += 1;
            let iv = data.get(pos..pos + len).ok_or_else(|| malformed("truncated IV"))?;
            pos += len;
            Some(iv.to_vec())
        } else {
            None
        };
        let payload = data[pos..].to_vec();
        let expected = Container::expected_payload(cipher, param, original_len)?;
        if payload.len() as u64 != expected {
            return Err(malformed(format!(
                "payload is {} bytes, original length {original_len} needs {expected}",
                payload.len()
            )));
        }
        Ok(Container {
            cipher,
            param,
            original_len,
            iv,
            payload,
        })
    }

    pub fn expect(self, cipher: CipherId) -> Result<Self, CliError> {
        if self.cipher != cipher {
            return Err(malformed(format!(
                "container holds {} ciphertext, expected {}",
                self.cipher.name(),
                cipher.name()
            )));
        }
        Ok(self)
    }
}
