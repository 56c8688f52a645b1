//! Exact decimal numbers for aggregates over numeric literals.

use core::cmp::Ordering;
use core::fmt;

/// `mantissa / 10^scale`.
#[derive(Debug, Clone, Copy)]
pub struct Decimal {
    mantissa: i128,
    scale: u32,
}

const MAX_SCALE: u32 = 30;

fn pow10(exp: u32) -> Option<i128> {
    10i128.checked_pow(exp)
}

impl Decimal {
    pub const ZERO: Decimal = Decimal {
        mantissa: 0,
        scale: 0,
    };

    pub fn new(mantissa: i128, scale: u32) -> Self {
        Decimal { mantissa, scale }
    }

    pub fn from_int(value: i128) -> Self {
        Decimal::new(value, 0)
    }

    pub fn mantissa(&self) -> i128 {
        self.mantissa
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    /// Parses the lexical forms of `xsd:integer`, `xsd:decimal` and
    /// `xsd:double` (finite values only, such as `1.5E3`).
    pub fn parse(lexical: &str) -> Option<Decimal> {
        let s = lexical.trim();
        let (mant, exp) = match s.find(['e', 'E']) {
            Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
            None => (s, 0),
        };
        let (negative, digits) = match mant.as_bytes().first()? {
            b'-' => (true, &mant[1..]),
            b'+' => (false, &mant[1..]),
            _ => (false, mant),
        };
        let (int, frac) = match digits.split_once('.') {
            Some((i, f)) => (i, f),
            None => (digits, ""),
        };
        if int.is_empty() && frac.is_empty() {
            return None;
        }
        if !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
            return None;
        }
        let mut mantissa: i128 = 0;
        for b in int.bytes().chain(frac.bytes()) {
            mantissa = mantissa.checked_mul(10)?.checked_add(i128::from(b - b'0'))?;
        }
        if negative {
            mantissa = -mantissa;
        }
        let scale = i64::try_from(frac.len()).ok()? - i64::from(exp);
        if scale < 0 {
            let factor = pow10(u32::try_from(-scale).ok()?)?;
            Some(Decimal::new(mantissa.checked_mul(factor)?, 0))
        } else {
            Some(Decimal::new(mantissa, u32::try_from(scale).ok()?).normalized())
        }
    }

    /// Drops trailing fractional zeros.
    pub fn normalized(mut self) -> Self {
        while self.scale > 0 && self.mantissa % 10 == 0 {
            self.mantissa /= 10;
            self.scale -= 1;
        }
        if self.scale > MAX_SCALE {
            return self.round(MAX_SCALE);
        }
        self
    }

    /// The same value with `scale` fractional digits, when representable
    /// without rounding.
    fn rescaled(self, scale: u32) -> Option<i128> {
        if scale >= self.scale {
            self.mantissa.checked_mul(pow10(scale - self.scale)?)
        } else {
            None
        }
    }

    pub fn checked_add(self, other: Decimal) -> Option<Decimal> {
        let scale = self.scale.max(other.scale);
        let m = self.rescaled(scale)?.checked_add(other.rescaled(scale)?)?;
        Some(Decimal::new(m, scale))
    }

    pub fn checked_mul_int(self, factor: i128) -> Option<Decimal> {
        Some(Decimal::new(self.mantissa.checked_mul(factor)?, self.scale))
    }

    /// `self / divisor`, rounded half away from zero to `scale` digits.
    pub fn checked_div_int(self, divisor: i128, scale: u32) -> Option<Decimal> {
        if divisor == 0 {
            return None;
        }
        let (num, den) = if scale >= self.scale {
            (self.mantissa.checked_mul(pow10(scale - self.scale)?)?, divisor)
        } else {
            (self.mantissa, divisor.checked_mul(pow10(self.scale - scale)?)?)
        };
        Some(Decimal::new(div_round(num, den)?, scale))
    }

    /// Rounds half away from zero to `scale` digits.
    pub fn round(self, scale: u32) -> Decimal {
        if scale >= self.scale {
            return match self.rescaled(scale) {
                Some(m) => Decimal::new(m, scale),
                None => self,
            };
        }
        let den = pow10(self.scale - scale).expect("scale gap below 39 digits");
        Decimal::new(div_round(self.mantissa, den).expect("nonzero divisor"), scale)
    }
}

fn div_round(num: i128, den: i128) -> Option<i128> {
    let q = num.checked_div(den)?;
    let r = num.checked_rem(den)?;
    let twice = r.unsigned_abs().checked_mul(2)?;
    if twice >= den.unsigned_abs() {
        if (num < 0) != (den < 0) {
            q.checked_sub(1)
        } else {
            q.checked_add(1)
        }
    } else {
        Some(q)
    }
}

impl PartialEq for Decimal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Decimal {}

impl PartialOrd for Decimal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Decimal {
    fn cmp(&self, other: &Self) -> Ordering {
        let scale = self.scale.max(other.scale);
        match (self.rescaled(scale), other.rescaled(scale)) {
            (Some(a), Some(b)) => a.cmp(&b),
            // Rescaling only overflows for huge magnitudes; the sign decides.
            (None, _) if self.mantissa > 0 => Ordering::Greater,
            (None, _) => Ordering::Less,
            (_, None) if other.mantissa > 0 => Ordering::Less,
            (_, None) => Ordering::Greater,
        }
    }
}

impl fmt::Display for Decimal {
    /// Plain notation with exactly `scale` fractional digits.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let abs = self.mantissa.unsigned_abs();
        if self.mantissa < 0 {
            f.write_str("-")?;
        }
        if self.scale == 0 {
            return write!(f, "{abs}");
        }
        let den = 10u128.pow(self.scale);
        write!(
            f,
            "{}.{:0width$}",
            abs / den,
            abs % den,
            width = self.scale as usize
        )
    }
}
