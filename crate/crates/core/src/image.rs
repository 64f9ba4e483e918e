//! RGB images as three byte planes, binary PPM (P6) I/O, and Bio-SNOW image
//! encryption.

use crate::biosnow::{KeyIv, Keystream};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImagePlanes {
    pub width: usize,
    pub height: usize,
    pub r: Vec<u8>,
    pub g: Vec<u8>,
    pub b: Vec<u8>,
    // Header bytes as read, so re-saving a loaded file is byte-exact.
    header: Option<Vec<u8>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Channel {
    Red,
    Green,
    Blue,
}

impl Channel {
    pub const ALL: [Channel; 3] = [Channel::Red, Channel::Green, Channel::Blue];

    pub fn name(self) -> &'static str {
        match self {
            Channel::Red => "red",
            Channel::Green => "green",
            Channel::Blue => "blue",
        }
    }
}

impl ImagePlanes {
    pub fn new(width: usize, height: usize, r: Vec<u8>, g: Vec<u8>, b: Vec<u8>) -> Result<Self> {
        let len = width * height;
        for (plane, what) in [(&r, "red plane"), (&g, "green plane"), (&b, "blue plane")] {
            if plane.len() != len {
                return Err(Error::Length {
                    what,
                    expected: len,
                    actual: plane.len(),
                });
            }
        }
        Ok(ImagePlanes {
            width,
            height,
            r,
            g,
            b,
            header: None,
        })
    }

    pub fn from_interleaved(width: usize, height: usize, rgb: &[u8]) -> Result<Self> {
        if rgb.len() != width * height * 3 {
            return Err(Error::Length {
                what: "interleaved RGB bytes",
                expected: width * height * 3,
                actual: rgb.len(),
            });
        }
        let mut planes = [Vec::new(), Vec::new(), Vec::new()];
        for p in planes.iter_mut() {
            p.reserve(width * height);
        }
        for px in rgb.chunks_exact(3) {
            for (p, &v) in planes.iter_mut().zip(px) {
                p.push(v);
            }
        }
        let [r, g, b] = planes;
        ImagePlanes::new(width, height, r, g, b)
    }

    pub fn interleaved(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.pixels() * 3);
        for i in 0..self.pixels() {
            out.extend_from_slice(&[self.r[i], self.g[i], self.b[i]]);
        }
        out
    }

    pub fn pixels(&self) -> usize {
        self.width * self.height
    }

    pub fn plane(&self, c: Channel) -> &[u8] {
        match c {
            Channel::Red => &self.r,
            Channel::Green => &self.g,
            Channel::Blue => &self.b,
        }
    }
}

/// Reads the next whitespace-delimited header token, skipping `#` comments.
fn header_token(data: &[u8], pos: &mut usize) -> Result<usize> {
    loop {
        while *pos < data.len() && data[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
        if *pos < data.len() && data[*pos] == b'#' {
            while *pos < data.len() && data[*pos] != b'\n' {
                *pos += 1;
            }
        } else {
            break;
        }
    }
    let start = *pos;
    while *pos < data.len() && data[*pos].is_ascii_digit() {
        *pos += 1;
    }
    if start == *pos {
        return Err(Error::Ppm(format!("expected a number at byte {start}")));
    }
    std::str::from_utf8(&data[start..*pos])
        .ok()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Ppm(format!("number at byte {start} is out of range")))
}

pub fn load_ppm(data: &[u8]) -> Result<ImagePlanes> {
    if data.len() < 2 || &data[..2] != b"P6" {
        return Err(Error::Ppm("missing P6 magic".into()));
    }
    let mut pos = 2;
    let width = header_token(data, &mut pos)?;
    let height = header_token(data, &mut pos)?;
    let maxval = header_token(data, &mut pos)?;
    if maxval != 255 {
        return Err(Error::Ppm(format!("max value {maxval} unsupported (only 255)")));
    }
    if width == 0 || height == 0 {
        return Err(Error::Ppm(format!("empty image {width}x{height}")));
    }
    match data.get(pos) {
        Some(c) if c.is_ascii_whitespace() => pos += 1,
        _ => return Err(Error::Ppm("header must end with one whitespace byte".into())),
    }
    let need = width
        .checked_mul(height)
        .and_then(|p| p.checked_mul(3))
        .ok_or_else(|| Error::Ppm("dimensions overflow".into()))?;
    let pixels = &data[pos..];
    if pixels.len() < need {
        return Err(Error::Ppm(format!(
            "truncated pixel data: {width}x{height} needs {need} bytes, found {}",
            pixels.len()
        )));
    }
    if pixels.len() > need {
        return Err(Error::Ppm(format!(
            "{} trailing bytes after pixel data",
            pixels.len() - need
        )));
    }
    let mut img = ImagePlanes::from_interleaved(width, height, pixels)?;
    img.header = Some(data[..pos].to_vec());
    Ok(img)
}

pub fn save_ppm(img: &ImagePlanes) -> Vec<u8> {
    let mut out = match &img.header {
        Some(h) => h.clone(),
        None => format!("P6\n{} {}\n255\n", img.width, img.height).into_bytes(),
    };
    out.extend(img.interleaved());
    out
}

/// Quads of keystream one image uses: four per channel sample.
pub fn quads_for(width: usize, height: usize) -> u64 {
    12 * width as u64 * height as u64
}

/// XORs every sample with a fresh keystream byte, red plane first, then green,
/// then blue, each row-major. Its own inverse.
pub fn encrypt_image(img: &ImagePlanes, kiv: &KeyIv) -> ImagePlanes {
    encrypt_image_with(img, &mut Keystream::new(kiv))
}

/// [`encrypt_image`] drawing from a caller-owned keystream, so offsets can be
/// audited through [`Keystream::consumed`].
pub fn encrypt_image_with(img: &ImagePlanes, ks: &mut Keystream) -> ImagePlanes {
    let mut out = img.clone();
    for plane in [&mut out.r, &mut out.g, &mut out.b] {
        for v in plane.iter_mut() {
            *v ^= ks.next_byte();
        }
    }
    out
}

pub fn decrypt_image(img: &ImagePlanes, kiv: &KeyIv) -> ImagePlanes {
    encrypt_image(img, kiv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::Quad;

    #[test]
    fn one_red_pixel() {
        let img = load_ppm(b"P6\n1 1\n255\n\xff\x00\x00").unwrap();
        assert_eq!((img.r.as_slice(), img.g.as_slice(), img.b.as_slice()), (&[255u8][..], &[0u8][..], &[0u8][..]));
    }

    #[test]
    fn truncated_data_is_rejected() {
        let err = load_ppm(b"P6\n2 2\n255\n012345678").unwrap_err();
        assert!(matches!(err, Error::Ppm(m) if m.contains("truncated")));
    }

    #[test]
    fn header_errors() {
        assert!(load_ppm(b"P3\n1 1\n255\n\0\0\0").is_err());
        assert!(load_ppm(b"P6\n1 1\n65535\n\0\0\0\0\0\0").is_err());
        assert!(load_ppm(b"P6\n1 x\n255\n\0\0\0").is_err());
        assert!(load_ppm(b"P6\n1 1\n255").is_err());
    }

    #[test]
    fn comments_survive_round_trip() {
        let raw = b"P6 # made by hand\n2   1\n# another\n255\r\x01\x02\x03\x04\x05\x06".to_vec();
        let img = load_ppm(&raw).unwrap();
        assert_eq!(img.width, 2);
        assert_eq!(img.b, vec![3, 6]);
        assert_eq!(save_ppm(&img), raw);
    }

    #[test]
    fn encryption_consumes_twelve_quads_per_pixel() {
        let img = ImagePlanes::new(3, 2, vec![1; 6], vec![2; 6], vec![3; 6]).unwrap();
        let kiv = KeyIv::new([Quad::T; 128], [Quad::C; 128]);
        let mut ks = Keystream::new(&kiv);
        let enc = encrypt_image_with(&img, &mut ks);
        assert_eq!(ks.consumed(), quads_for(3, 2));
        assert_eq!(decrypt_image(&enc, &kiv), img);
    }

    #[test]
    fn plane_lengths_checked() {
        assert!(ImagePlanes::new(2, 2, vec![0; 4], vec![0; 3], vec![0; 4]).is_err());
    }
}
