use crate::error::{Error, Result};

pub const ODLYZKO_MAX_DEGREE: u32 = 10;

/// From this degree on, the root discriminant of a totally real field is at
/// least [`ROOT_DISCRIMINANT_FLOOR`] (unconditional analytic bound).
pub const ROOT_FLOOR_FROM_DEGREE: u32 = 9;
pub const ROOT_DISCRIMINANT_FLOOR: u64 = 11;

/// Lower bounds for the absolute discriminant of a totally real field of
/// degree `d`. Degrees 1 to 8 carry the proven minima; 9 and 10 the
/// root-discriminant floor `11^d`.
const MIN_DISC: [u64; 10] = [
    1,
    5,
    49,
    725,
    14_641,
    300_125,
    20_134_393,
    282_300_416,
    2_357_947_691,  // 11^9
    25_937_424_601, // 11^10
];

pub fn odlyzko_min_disc(d: u32) -> Result<u64> {
    if !(1..=ODLYZKO_MAX_DEGREE).contains(&d) {
        return Err(Error::InvalidArgument(format!(
            "no discriminant bound stored for degree {d}"
        )));
    }
    Ok(MIN_DISC[d as usize - 1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strictly_increasing_and_consistent_with_floor() {
        for d in 1..ODLYZKO_MAX_DEGREE {
            assert!(odlyzko_min_disc(d).unwrap() < odlyzko_min_disc(d + 1).unwrap());
        }
        for d in ROOT_FLOOR_FROM_DEGREE..=ODLYZKO_MAX_DEGREE {
            assert!(odlyzko_min_disc(d).unwrap() >= ROOT_DISCRIMINANT_FLOOR.pow(d));
        }
        assert_eq!(odlyzko_min_disc(1).unwrap(), 1);
        assert_eq!(odlyzko_min_disc(2).unwrap(), 5);
        assert!(odlyzko_min_disc(6).unwrap() <= 300_125);
        assert!(odlyzko_min_disc(0).is_err() && odlyzko_min_disc(11).is_err());
    }
}
