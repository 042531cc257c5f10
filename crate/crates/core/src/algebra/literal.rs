//! Textual weight literals.
//!
//! `bool2`: `0`, `1`. `chain3`: `bot`, `u`, `top`. `chain:<n>`: rank `0..n-1`.
//! `godel`: decimal (`0.4`) or fraction (`2/5`), parsed exactly.

use num_bigint::BigInt;
use num_rational::Ratio;
use thiserror::Error;

use super::{Algebra, Chain3, TruthValue, UnitRational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiteralError {
    #[error("empty weight literal")]
    Empty,
    #[error("unexpected character {found:?} at offset {offset} in weight literal `{text}`")]
    Unexpected {
        text: String,
        offset: usize,
        found: char,
    },
    #[error("weight literal `{text}` is not an element of {algebra}")]
    OutOfCarrier { text: String, algebra: Algebra },
    #[error("weight literal `{text}` is too large to represent")]
    Overflow { text: String },
}

pub(super) fn parse(algebra: Algebra, text: &str) -> Result<TruthValue, LiteralError> {
    if text.is_empty() {
        return Err(LiteralError::Empty);
    }
    let out_of_carrier = || LiteralError::OutOfCarrier {
        text: text.to_string(),
        algebra,
    };
    match algebra {
        Algebra::Bool2 => match text {
            "0" => Ok(TruthValue::Bool2(false)),
            "1" => Ok(TruthValue::Bool2(true)),
            _ => {
                let n = parse_natural(text, 0)?;
                Err(if n.is_some() {
                    out_of_carrier()
                } else {
                    overflow(text)
                })
            }
        },
        Algebra::Chain3 => match text {
            "bot" => Ok(TruthValue::Chain3(Chain3::Bot)),
            "u" => Ok(TruthValue::Chain3(Chain3::Unknown)),
            "top" => Ok(TruthValue::Chain3(Chain3::Top)),
            _ => Err(out_of_carrier()),
        },
        Algebra::Chain(size) => {
            let rank = parse_natural(text, 0)?.ok_or_else(|| overflow(text))?;
            match u32::try_from(rank) {
                Ok(rank) if rank < size => Ok(TruthValue::ChainN { rank, size }),
                _ => Err(out_of_carrier()),
            }
        }
        Algebra::Godel => parse_godel(text).and_then(|r| {
            UnitRational::from_ratio(r)
                .map(TruthValue::Unit)
                .ok_or_else(out_of_carrier)
        }),
    }
}

fn overflow(text: &str) -> LiteralError {
    LiteralError::Overflow {
        text: text.to_string(),
    }
}

/// Parses a run of ASCII digits starting at byte `start`; `Ok(None)` on overflow.
fn parse_natural(text: &str, start: usize) -> Result<Option<i64>, LiteralError> {
    let digits = &text[start..];
    if digits.is_empty() {
        return Err(LiteralError::Empty);
    }
    if let Some((i, c)) = digits.char_indices().find(|(_, c)| !c.is_ascii_digit()) {
        return Err(LiteralError::Unexpected {
            text: text.to_string(),
            offset: start + i,
            found: c,
        });
    }
    Ok(digits.parse::<i64>().ok())
}

fn parse_godel(text: &str) -> Result<Ratio<i64>, LiteralError> {
    let (negative, body_start) = match text.strip_prefix('-') {
        Some(_) => (true, 1),
        None => (false, 0),
    };
    let body = &text[body_start..];
    let value = if let Some(slash) = body.find('/') {
        let numer = natural_between(text, body_start, body_start + slash)?;
        let denom = natural_between(text, body_start + slash + 1, text.len())?;
        if denom == 0 {
            return Err(LiteralError::Unexpected {
                text: text.to_string(),
                offset: body_start + slash + 1,
                found: '0',
            });
        }
        Ratio::new(numer, denom)
    } else if let Some(dot) = body.find('.') {
        let whole = natural_between(text, body_start, body_start + dot)?;
        let frac_start = body_start + dot + 1;
        let frac_digits = text.len() - frac_start;
        let frac = natural_between(text, frac_start, text.len())?;
        let scale = u32::try_from(frac_digits)
            .ok()
            .and_then(|k| 10i64.checked_pow(k))
            .ok_or_else(|| overflow(text))?;
        let numer = whole
            .checked_mul(scale)
            .and_then(|w| w.checked_add(frac))
            .ok_or_else(|| overflow(text))?;
        Ratio::new(numer, scale)
    } else {
        Ratio::from_integer(natural_between(text, body_start, text.len())?)
    };
    Ok(if negative { -value } else { value })
}

fn natural_between(text: &str, start: usize, end: usize) -> Result<i64, LiteralError> {
    if start == end {
        let found = text[end..].chars().next();
        return Err(match found {
            Some(found) => LiteralError::Unexpected {
                text: text.to_string(),
                offset: end,
                found,
            },
            None => LiteralError::Unexpected {
                text: text.to_string(),
                offset: end,
                found: ' ',
            },
        });
    }
    parse_natural(&text[..end], start)?.ok_or_else(|| overflow(text))
}

pub(super) fn format(v: &TruthValue) -> String {
    match v {
        TruthValue::Bool2(b) => u8::from(*b).to_string(),
        TruthValue::Chain3(Chain3::Bot) => "bot".into(),
        TruthValue::Chain3(Chain3::Unknown) => "u".into(),
        TruthValue::Chain3(Chain3::Top) => "top".into(),
        TruthValue::ChainN { rank, .. } => rank.to_string(),
        TruthValue::Unit(r) => format_unit(r.ratio()),
    }
}

/// Terminating decimals print as decimals, everything else as `p/q`.
fn format_unit(r: Ratio<i64>) -> String {
    let (numer, denom) = (*r.numer(), *r.denom());
    if denom == 1 {
        return numer.to_string();
    }
    let mut rest = denom;
    let (mut twos, mut fives) = (0u32, 0u32);
    while rest % 2 == 0 {
        rest /= 2;
        twos += 1;
    }
    while rest % 5 == 0 {
        rest /= 5;
        fives += 1;
    }
    if rest != 1 {
        return format!("{numer}/{denom}");
    }
    let places = twos.max(fives);
    let scaled = BigInt::from(numer) * BigInt::from(10).pow(places) / BigInt::from(denom);
    let digits = format!("{:0>width$}", scaled.to_string(), width = places as usize);
    let frac = digits.trim_end_matches('0');
    format!("0.{frac}")
}
