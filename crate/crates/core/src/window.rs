use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Inclusive range of complete publication years.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Window {
    pub start: i32,
    pub end: i32,
}

impl Window {
    pub fn new(start: i32, end: i32) -> Result<Self> {
        if start > end {
            return Err(Error::EmptyWindow { start, end });
        }
        Ok(Window { start, end })
    }

    /// The `years` complete years ending at `end`.
    pub fn ending(end: i32, years: i32) -> Result<Self> {
        Self::new(end - years + 1, end)
    }

    pub fn contains(&self, year: i32) -> bool {
        (self.start..=self.end).contains(&year)
    }

    pub fn len(&self) -> usize {
        (self.end - self.start + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn years(&self) -> impl Iterator<Item = i32> {
        self.start..=self.end
    }

    /// Splits into two consecutive windows; the first gets the shorter half
    /// for odd lengths. A one-year window has an empty first half.
    pub fn halves(&self) -> (Option<Window>, Window) {
        let first_len = self.len() as i32 / 2;
        let split = self.start + first_len;
        let first = (first_len > 0).then(|| Window {
            start: self.start,
            end: split - 1,
        });
        (first, Window { start: split, end: self.end })
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.start, self.end)
    }
}
