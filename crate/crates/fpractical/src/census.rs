//! High-throughput enumeration: the smallest-prime-factor sieve, chunked
//! parallel counting of f-practical numbers with ratio tables, and the
//! density toolbox.

use std::io::Write;
use std::time::Instant;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::{is_prime, Factorization, FunctionKind, FunctionSpec, PrimePowerRule};
use crate::practicality::decide_practical_factors;
use crate::{Error, Result};

/// Default memory guard for [`SpfSieve::build`]: a 10^8 table costs 400 MB.
pub const DEFAULT_SIEVE_GUARD: u64 = 100_000_000;

/// Default chunk length for the parallel census; cache-friendly
/// factorization batches with negligible merge overhead.
pub const DEFAULT_CHUNK_SIZE: u64 = 1 << 16;

/// Smallest-prime-factor table for every `2 <= n <= limit`, enabling
/// factorization by repeated division in `O(log n)` steps. Built once,
/// immutable, shared read-only across census workers.
pub struct SpfSieve {
    limit: u64,
    spf: Vec<u32>,
}

impl SpfSieve {
    /// Builds the table up to `limit` under the default memory guard.
    pub fn build(limit: u64) -> Result<Self> {
        Self::build_with_guard(limit, DEFAULT_SIEVE_GUARD)
    }

    /// Builds the table with an explicit guard (still capped by the `u32`
    /// entry width).
    pub fn build_with_guard(limit: u64, guard: u64) -> Result<Self> {
        let guard = guard.min(u32::MAX as u64);
        if limit > guard {
            return Err(Error::SieveLimit { requested: limit, guard });
        }
        let n = limit as usize;
        let mut spf = vec![0u32; n + 1];
        let mut primes: Vec<u32> = Vec::new();
        for i in 2..=n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            let spf_i = spf[i];
            for &p in &primes {
                if p > spf_i {
                    break;
                }
                let m = p as usize * i;
                if m > n {
                    break;
                }
                spf[m] = p;
            }
        }
        Ok(SpfSieve { limit, spf })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Smallest prime factor of `n`; `n` must be in `[2, limit]`.
    pub fn smallest_prime_factor(&self, n: u64) -> u64 {
        self.spf[n as usize] as u64
    }

    pub fn is_prime(&self, n: u64) -> bool {
        n >= 2 && self.spf[n as usize] as u64 == n
    }

    /// Primes in `[2, limit]`, ascending.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        (2..=self.limit).filter(|&n| self.is_prime(n))
    }

    /// Factorizes `1 <= n <= limit` through the table.
    pub fn factorize(&self, n: u64) -> Result<Factorization> {
        if n == 0 {
            return Err(Error::ZeroInput);
        }
        if n > self.limit {
            return Err(Error::SieveLimit { requested: n, guard: self.limit });
        }
        let mut factors = Vec::new();
        self.factorize_into(n, &mut factors);
        Ok(Factorization::from_sorted_unchecked(n, factors))
    }

    /// Allocation-free factorization for the census hot path. `n` must be
    /// in `[1, limit]`.
    pub(crate) fn factorize_into(&self, n: u64, out: &mut Vec<(u64, u32)>) {
        out.clear();
        let mut rest = n as usize;
        while rest > 1 {
            let p = self.spf[rest];
            let mut e = 0u32;
            loop {
                rest /= p as usize;
                e += 1;
                if rest == 1 || self.spf[rest] != p {
                    break;
                }
            }
            out.push((p as u64, e));
        }
    }
}

/// Builds an SPF sieve up to `limit` (inclusive) under the default guard.
pub fn build_sieve(limit: u64) -> Result<SpfSieve> {
    SpfSieve::build(limit)
}

/// One checkpoint of a census: the cumulative count of f-practical numbers
/// up to `x`, and the wall time the checkpoint segment took.
#[derive(Debug, Clone)]
pub struct CensusRow {
    pub x: u64,
    pub count: u64,
    pub seconds: f64,
}

impl CensusRow {
    /// `count / (x / ln x)`. Recomputed from the count on demand, never
    /// stored independently.
    pub fn ratio(&self) -> f64 {
        self.count as f64 * (self.x as f64).ln() / self.x as f64
    }

    /// The ratio at table precision: six decimal places, ties to even.
    pub fn ratio_string(&self) -> String {
        format!("{:.6}", self.ratio())
    }
}

impl Serialize for CensusRow {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("CensusRow", 4)?;
        s.serialize_field("x", &self.x)?;
        s.serialize_field("count", &self.count)?;
        s.serialize_field("ratio", &self.ratio_string())?;
        s.serialize_field("seconds", &self.seconds)?;
        s.end()
    }
}

/// Counts of f-practical numbers at a list of checkpoints.
#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    pub function: String,
    pub rows: Vec<CensusRow>,
}

impl CensusReport {
    /// Emits the `X,count,ratio` CSV form.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("X,count,ratio\n");
        for row in &self.rows {
            out.push_str(&format!("{},{},{}\n", row.x, row.count, row.ratio_string()));
        }
        out
    }
}

fn validate_checkpoints(checkpoints: &[u64], limit: u64) -> Result<()> {
    if checkpoints.is_empty() {
        return Err(Error::Contract("at least one checkpoint is required".into()));
    }
    if checkpoints[0] == 0 {
        return Err(Error::ZeroInput);
    }
    if checkpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Contract("checkpoints must be strictly ascending".into()));
    }
    let max = *checkpoints.last().unwrap();
    if max > limit {
        return Err(Error::SieveLimit { requested: max, guard: limit });
    }
    Ok(())
}

/// How a census decides membership for a single integer.
enum Membership<'a> {
    /// f-practical in the distinct-divisor sense.
    Practical(&'a FunctionSpec),
    /// The bounded-multiplicity lambda notion (divisor weights
    /// `lambda(d)`, each usable up to `phi(d)/lambda(d)` times).
    LambdaBounded,
}

struct ChunkOutcome {
    count: u64,
    members: Option<Vec<u64>>,
}

fn census_impl(
    sieve: &SpfSieve,
    membership: Membership<'_>,
    name: &str,
    checkpoints: &[u64],
    chunk_size: u64,
    mut member_sink: Option<&mut dyn Write>,
) -> Result<CensusReport> {
    validate_checkpoints(checkpoints, sieve.limit)?;
    let chunk_size = chunk_size.max(1);
    let collect_members = member_sink.is_some();

    let mut rows = Vec::with_capacity(checkpoints.len());
    let mut cumulative = 0u64;
    let mut lo = 1u64;
    for &cp in checkpoints {
        let started = Instant::now();
        // Chunks are fixed-size blocks of [lo, cp]; their partial results
        // are merged in index order, so the outcome does not depend on the
        // execution schedule.
        let starts: Vec<u64> = (lo..=cp).step_by(chunk_size as usize).collect();
        let outcomes: Vec<ChunkOutcome> = starts
            .par_iter()
            .map_init(
                || (Vec::new(), Vec::new()),
                |(factors, weights), &start| -> Result<ChunkOutcome> {
                    let end = (start + chunk_size - 1).min(cp);
                    let mut count = 0u64;
                    let mut members = if collect_members { Some(Vec::new()) } else { None };
                    for n in start..=end {
                        sieve.factorize_into(n, factors);
                        let is_member = match membership {
                            Membership::Practical(spec) => {
                                decide_practical_factors(spec, factors, weights)?
                            }
                            Membership::LambdaBounded => {
                                crate::practicality::is_lambda_practical(n)?
                            }
                        };
                        if is_member {
                            count += 1;
                            if let Some(m) = members.as_mut() {
                                m.push(n);
                            }
                        }
                    }
                    Ok(ChunkOutcome { count, members })
                },
            )
            .collect::<Result<_>>()?;
        for outcome in outcomes {
            cumulative += outcome.count;
            if let (Some(sink), Some(members)) = (member_sink.as_deref_mut(), outcome.members) {
                for n in members {
                    writeln!(sink, "{n}")?;
                }
            }
        }
        rows.push(CensusRow {
            x: cp,
            count: cumulative,
            seconds: started.elapsed().as_secs_f64(),
        });
        lo = cp + 1;
    }
    Ok(CensusReport { function: name.to_string(), rows })
}

/// Counts the f-practical numbers up to each checkpoint.
///
/// The range `[1, max checkpoint]` is processed in fixed chunks, in
/// parallel, and merged deterministically irrespective of execution order.
pub fn count_practicals(
    sieve: &SpfSieve,
    spec: &FunctionSpec,
    checkpoints: &[u64],
    chunk_size: u64,
) -> Result<CensusReport> {
    census_impl(
        sieve,
        Membership::Practical(spec),
        spec.name(),
        checkpoints,
        chunk_size,
        None,
    )
}

/// As [`count_practicals`], additionally streaming every member as a
/// newline-delimited integer to `sink`, in ascending order.
pub fn count_practicals_streaming(
    sieve: &SpfSieve,
    spec: &FunctionSpec,
    checkpoints: &[u64],
    chunk_size: u64,
    sink: &mut dyn Write,
) -> Result<CensusReport> {
    census_impl(
        sieve,
        Membership::Practical(spec),
        spec.name(),
        checkpoints,
        chunk_size,
        Some(sink),
    )
}

/// Census under the bounded-multiplicity lambda notion instead of the
/// distinct-divisor one. Subject to the knapsack bound on `n`.
pub fn count_lambda_bounded(
    sieve: &SpfSieve,
    checkpoints: &[u64],
    chunk_size: u64,
) -> Result<CensusReport> {
    census_impl(
        sieve,
        Membership::LambdaBounded,
        "lambda-def53",
        checkpoints,
        chunk_size,
        None,
    )
}

/// An empirical density measurement, with the exact limit density attached
/// when the function is an `f_m` family member (where the practical set is
/// exactly 1 together with the integers sharing a factor with `m`).
#[derive(Debug, Clone, Serialize)]
pub struct DensityEstimate {
    pub function: String,
    pub limit: u64,
    pub count: u64,
    pub empirical: f64,
    /// `1 - phi(m)/m` as a reduced fraction, for `f_m` specs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_target: Option<(u64, u64)>,
}

/// Counts f-practical numbers up to `limit` and reports `count / limit`.
pub fn density_estimate(
    sieve: &SpfSieve,
    spec: &FunctionSpec,
    limit: u64,
) -> Result<DensityEstimate> {
    let report = count_practicals(sieve, spec, &[limit], DEFAULT_CHUNK_SIZE)?;
    let count = report.rows[0].count;
    let exact_target = match spec.kind() {
        FunctionKind::Multiplicative(PrimePowerRule::TwoOrThree(m)) => {
            let phi_m = FunctionSpec::phi().eval(&crate::arith::factorize(*m)?)?;
            let g = crate::arith::gcd(*m - phi_m, *m);
            Some(((*m - phi_m) / g, *m / g))
        }
        _ => None,
    };
    Ok(DensityEstimate {
        function: spec.name().to_string(),
        limit,
        count,
        empirical: count as f64 / limit as f64,
        exact_target,
    })
}

/// A parameter `n` whose practical-set density `1 - phi(n)/n` lands within
/// `epsilon` of a requested value. Reported exactly: as a big integer
/// together with its (squarefree) prime support, since useful parameters
/// are primorial-like and rapidly outgrow machine words.
#[derive(Debug, Clone)]
pub struct DensityTarget {
    pub n: BigUint,
    pub primes: Vec<u64>,
    /// `1 - phi(n)/n`, exact.
    pub achieved: BigRational,
}

impl DensityTarget {
    pub fn achieved_f64(&self) -> f64 {
        self.achieved.to_f64().unwrap_or(f64::NAN)
    }
}

impl Serialize for DensityTarget {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("DensityTarget", 4)?;
        s.serialize_field("n", &self.n.to_string())?;
        s.serialize_field("primes", &self.primes)?;
        s.serialize_field("achieved", &self.achieved_f64())?;
        s.serialize_field(
            "achieved_exact",
            &format!("{}/{}", self.achieved.numer(), self.achieved.denom()),
        )?;
        s.end()
    }
}

/// Finds a parameter `n` with `|1 - phi(n)/n - alpha| < epsilon` by greedy
/// products of primes: scan primes ascending and keep `p` whenever the
/// ratio `phi(n)/n` stays at or above the target after multiplying. The
/// ratio then decreases towards the target in ever finer steps and the
/// greedy terminates with a near-minimal, primorial-like product.
/// `search_bound` caps the primes considered; exhausting it without
/// reaching the tolerance is reported as an error, never papered over.
pub fn density_target(
    alpha: &BigRational,
    epsilon: &BigRational,
    search_bound: u64,
) -> Result<DensityTarget> {
    if alpha < &BigRational::zero() || alpha > &BigRational::one() {
        return Err(Error::Contract("alpha must lie in [0, 1]".into()));
    }
    if epsilon <= &BigRational::zero() {
        return Err(Error::Contract("epsilon must be positive".into()));
    }
    let beta = BigRational::one() - alpha; // target for phi(n)/n
    let mut ratio = BigRational::one();
    let mut n = BigUint::one();
    let mut primes = Vec::new();

    let achieved = |ratio: &BigRational| BigRational::one() - ratio;
    let within = |ratio: &BigRational| (achieved(ratio) - alpha).abs() < *epsilon;

    let mut p = 2u64;
    while !within(&ratio) {
        if p > search_bound {
            return Err(Error::DensityTargetUnreachable { bound: search_bound });
        }
        if is_prime(p) {
            let step = BigRational::new((p - 1).into(), p.into());
            let candidate = &ratio * &step;
            if candidate >= beta {
                ratio = candidate;
                n *= BigUint::from(p);
                primes.push(p);
            }
        }
        p += 1;
    }
    Ok(DensityTarget { n, primes, achieved: achieved(&ratio) })
}

/// One row of the s-practical trend table: exact count up to `x` and the
/// plain density `count / x`.
#[derive(Debug, Clone, Serialize)]
pub struct TrendRow {
    pub x: u64,
    pub count: u64,
    pub density: f64,
}

/// Exact counts of s-practical numbers at each checkpoint with their
/// densities; the ratios are reported as data (their decline across
/// decades is asserted by the acceptance suite, not here).
pub fn s_density_trend(sieve: &SpfSieve, checkpoints: &[u64]) -> Result<Vec<TrendRow>> {
    let spec = FunctionSpec::proper_divisor_sum();
    let report = count_practicals(sieve, &spec, checkpoints, DEFAULT_CHUNK_SIZE)?;
    Ok(report
        .rows
        .into_iter()
        .map(|row| TrendRow {
            x: row.x,
            count: row.count,
            density: row.count as f64 / row.x as f64,
        })
        .collect())
}
