use std::str::FromStr;

use xxpaths::C64;

/// Parse `a`, `bi`, `a+bi` or `a-bi`.
pub fn parse_complex(s: &str) -> Result<C64, String> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("cannot parse complex number {s:?}");
    let real = |t: &str| t.parse::<f64>().map_err(|_| bad());
    let imag = |t: &str| match t {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => t.parse::<f64>().map_err(|_| bad()),
    };
    let z = match s.strip_suffix('i') {
        None => C64::new(real(&s)?, 0.0),
        Some(body) => {
            let bytes = body.as_bytes();
            let split = (1..bytes.len())
                .rev()
                .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
            match split {
                Some(k) => C64::new(real(&body[..k])?, imag(&body[k..])?),
                None => C64::new(0.0, imag(body)?),
            }
        }
    };
    if !z.is_finite() {
        return Err(format!("{s:?} is not finite"));
    }
    Ok(z)
}

/// Integer values given as `a`, `a,b,c` or the inclusive range `a..b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntRange(pub Vec<usize>);

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("cannot parse integer {t:?}"));
        if let Some((a, b)) = s.split_once("..") {
            let b = b.strip_prefix('=').unwrap_or(b);
            let (a, b) = (num(a)?, num(b)?);
            if a > b {
                return Err(format!("empty range {s:?}"));
            }
            return Ok(IntRange((a..=b).collect()));
        }
        Ok(IntRange(s.split(',').map(num).collect::<Result<_, _>>()?))
    }
}

/// Real values given as `x`, `x,y,z` or `start:step:stop` with `stop`
/// included when it lies on the grid.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatRange(pub Vec<f64>);

impl FromStr for FloatRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| {
            let v = t.trim().parse::<f64>().map_err(|_| format!("cannot parse number {t:?}"))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(format!("{t:?} is not finite"))
            }
        };
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [start, step, stop] => {
                let (start, step, stop) = (num(start)?, num(step)?, num(stop)?);
                if step <= 0.0 || stop < start {
                    return Err(format!("range {s:?} needs step > 0 and start <= stop"));
                }
                let count = ((stop - start) / step + 1e-9).floor() as usize;
                if count > 1_000_000 {
                    return Err(format!("range {s:?} has too many points"));
                }
                Ok(FloatRange((0..=count).map(|i| start + i as f64 * step).collect()))
            }
            [_] => Ok(FloatRange(s.split(',').map(num).collect::<Result<_, _>>()?)),
            _ => Err(format!("cannot parse range {s:?}; use start:step:stop")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("0.5").unwrap(), C64::new(0.5, 0.0));
        assert_eq!(parse_complex("-2i").unwrap(), C64::new(0.0, -2.0));
        assert_eq!(parse_complex("i").unwrap(), C64::new(0.0, 1.0));
        assert_eq!(parse_complex("1-i").unwrap(), C64::new(1.0, -1.0));
        assert_eq!(parse_complex("1e-3+2.5e+1i").unwrap(), C64::new(1e-3, 25.0));
        assert_eq!(parse_complex("-1.5 + 0.5i").unwrap(), C64::new(-1.5, 0.5));
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("nan").is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!("0..3".parse::<IntRange>().unwrap().0, vec![0, 1, 2, 3]);
        assert_eq!("2".parse::<IntRange>().unwrap().0, vec![2]);
        assert_eq!("1,4".parse::<IntRange>().unwrap().0, vec![1, 4]);
        assert!("3..1".parse::<IntRange>().is_err());
        let t = "0:0.1:1".parse::<FloatRange>().unwrap().0;
        assert_eq!(t.len(), 11);
        assert!((t[10] - 1.0).abs() < 1e-12);
        assert_eq!("0.5".parse::<FloatRange>().unwrap().0, vec![0.5]);
        assert!("0:0:1".parse::<FloatRange>().is_err());
    }
}
