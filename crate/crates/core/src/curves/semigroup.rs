//! Numerical semigroups given by a finite generator set.

use crate::error::{Error, Result};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A numerical semigroup `<g_1, ..., g_k>` with gcd 1.
///
/// Membership is sieved up to the conductor; every integer at or above the
/// conductor belongs to the semigroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    /// Membership for 0..conductor.
    head: Vec<bool>,
}

impl NumericalSemigroup {
    pub fn new(generators: &[u64]) -> Result<Self> {
        let mut generators: Vec<u64> = generators.iter().copied().filter(|&g| g > 0).collect();
        generators.sort_unstable();
        generators.dedup();
        if generators.is_empty() {
            return Err(Error::Empty("semigroup needs a positive generator"));
        }
        let d = generators.iter().fold(0, |acc, &g| gcd(acc, g));
        if d != 1 {
            return Err(Error::SemigroupGcd(d));
        }
        let smallest = generators[0] as usize;
        let mut member = vec![true];
        let mut run = 1usize;
        // Once `smallest` consecutive members are seen, adding `smallest` covers everything after.
        while run < smallest {
            let n = member.len();
            let is = generators
                .iter()
                .any(|&g| (g as usize) <= n && member[n - g as usize]);
            member.push(is);
            run = if is { run + 1 } else { 0 };
        }
        let conductor = member.len() - run;
        member.truncate(conductor);
        Ok(NumericalSemigroup {
            generators,
            head: member,
        })
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// Smallest c with c + N contained in the semigroup.
    pub fn conductor(&self) -> u64 {
        self.head.len() as u64
    }

    pub fn contains(&self, n: u64) -> bool {
        match self.head.get(n as usize) {
            Some(&b) => b,
            None => true,
        }
    }

    /// Number of positive integers outside the semigroup.
    pub fn gap_count(&self) -> u64 {
        self.head.iter().filter(|&&b| !b).count() as u64
    }

    /// Nongaps in ascending order, starting at 0.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (0u64..).filter(move |&n| self.contains(n))
    }

    pub fn nongaps(&self, count: usize) -> Vec<u64> {
        self.iter().take(count).collect()
    }
}

/// First `count` nongaps of the semigroup generated by `generators`.
pub fn semigroup_nongaps(generators: &[u64], count: usize) -> Result<Vec<u64>> {
    Ok(NumericalSemigroup::new(generators)?.nongaps(count))
}

pub fn semigroup_gap_count(generators: &[u64]) -> Result<u64> {
    Ok(NumericalSemigroup::new(generators)?.gap_count())
}
