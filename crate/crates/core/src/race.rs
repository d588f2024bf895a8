//! The pursuit race between a fast runner (Achilles) and a slow one (the
//! tortoise) that starts `head_start` ahead.
//!
//! Step `n` is the instant Achilles reaches the place the tortoise occupied at
//! the end of step `n - 1`; step 0 ends at the tortoise's starting point. With
//! speed ratio `r = tortoise_speed / achilles_speed` the step times form a
//! geometric series:
//!
//! ```text
//! t_n = (x0 / sA) * (1 + r + ... + r^n) = (x0 / sA) * (1 - r^(n+1)) / (1 - r)
//! x_n = sA * t_n
//! ```
//!
//! For `r < 1` the series converges to the catch-up instant
//! `(x0 / sA) / (1 - r)`. A configuration with `r >= 1` is still a valid race;
//! only the operations that take the limit reject it.

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Upper bound on the number of steps a single call will materialize. Digit
/// counts grow linearly with the step index.
pub const MAX_STEPS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RaceConfig {
    head_start: Rational,
    achilles_speed: Rational,
    tortoise_speed: Rational,
    ratio: Rational,
}

/// One completed catch-up step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepEvent {
    pub n: u32,
    /// Time at which the step ends.
    pub time: Rational,
    /// Achilles' position at `time`, which is the tortoise's position one step earlier.
    pub position: Rational,
}

/// The limit of the step sequence: where and when the runners draw level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatchUp {
    pub time: Rational,
    pub position: Rational,
}

/// Positions of both runners at one instant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Positions {
    pub achilles: Rational,
    pub tortoise: Rational,
}

impl Positions {
    /// Tortoise position minus Achilles position.
    pub fn lead(&self) -> Rational {
        &self.tortoise - &self.achilles
    }
}

impl RaceConfig {
    /// Requires `head_start > 0`, `achilles_speed > 0` and `tortoise_speed >= 0`.
    pub fn new(
        head_start: Rational,
        achilles_speed: Rational,
        tortoise_speed: Rational,
    ) -> Result<Self> {
        if !head_start.is_positive() {
            return Err(Error::invalid("head start must be positive"));
        }
        if !achilles_speed.is_positive() {
            return Err(Error::invalid("Achilles' speed must be positive"));
        }
        if tortoise_speed.is_negative() {
            return Err(Error::invalid("tortoise speed must be non-negative"));
        }
        let ratio = &tortoise_speed / &achilles_speed;
        Ok(RaceConfig {
            head_start,
            achilles_speed,
            tortoise_speed,
            ratio,
        })
    }

    pub fn head_start(&self) -> &Rational {
        &self.head_start
    }

    pub fn achilles_speed(&self) -> &Rational {
        &self.achilles_speed
    }

    pub fn tortoise_speed(&self) -> &Rational {
        &self.tortoise_speed
    }

    /// `tortoise_speed / achilles_speed`.
    pub fn ratio(&self) -> &Rational {
        &self.ratio
    }

    /// Whether Achilles is strictly faster, so that a catch-up point exists.
    pub fn is_convergent(&self) -> bool {
        self.ratio < Rational::one()
    }

    /// Duration of step 0: `head_start / achilles_speed`.
    pub fn first_step_time(&self) -> Rational {
        &self.head_start / &self.achilles_speed
    }

    fn require_convergent(&self) -> Result<()> {
        if self.is_convergent() {
            Ok(())
        } else {
            Err(Error::NoCatchUp)
        }
    }

    /// `(1 - r^(n+1)) / (1 - r)`.
    fn geometric_factor(&self, n: u32) -> Result<Rational> {
        let one = Rational::one();
        if self.ratio == one {
            return Err(Error::DegenerateRatio);
        }
        let exponent = n.checked_add(1).ok_or_else(|| Error::invalid("step index too large"))?;
        Ok((&one - &self.ratio.pow(exponent)) / (&one - &self.ratio))
    }

    /// Events `0..count` from the recurrence, exactly.
    pub fn step_sequence(&self, count: usize) -> Result<Vec<StepEvent>> {
        if count == 0 {
            return Err(Error::invalid("step count must be at least 1"));
        }
        if count > MAX_STEPS {
            return Err(Error::ResourceLimit {
                requested: count,
                limit: MAX_STEPS,
            });
        }
        let mut events = Vec::with_capacity(count);
        let mut position = self.head_start.clone();
        let mut time = self.first_step_time();
        for n in 0..count as u32 {
            let next_position = &self.head_start + &(&self.tortoise_speed * &time);
            let next_time = &next_position / &self.achilles_speed;
            events.push(StepEvent { n, time, position });
            position = next_position;
            time = next_time;
        }
        Ok(events)
    }

    /// Closed-form time of step `n`; undefined for `r = 1`.
    pub fn t_n_closed(&self, n: u32) -> Result<Rational> {
        Ok(self.first_step_time() * self.geometric_factor(n)?)
    }

    /// Closed-form position of step `n`; undefined for `r = 1`.
    pub fn x_n_closed(&self, n: u32) -> Result<Rational> {
        Ok(&self.head_start * &self.geometric_factor(n)?)
    }

    /// Checks `sA = x_n / t_n` on every event and, when the tortoise moves,
    /// `sT = (x_{n+1} - x0) / t_n` on every consecutive pair.
    pub fn speed_identities_hold(&self, events: &[StepEvent]) -> bool {
        let achilles_ok = events
            .iter()
            .all(|e| e.time.is_positive() && &e.position / &e.time == self.achilles_speed);
        if !achilles_ok {
            return false;
        }
        if self.tortoise_speed.is_zero() {
            return true;
        }
        events.windows(2).all(|pair| {
            (&pair[1].position - &self.head_start) / &pair[0].time == self.tortoise_speed
        })
    }

    /// Generates `count` events and checks both speed identities on them.
    pub fn verify_speed_identities(&self, count: usize) -> bool {
        match self.step_sequence(count) {
            Ok(events) => self.speed_identities_hold(&events),
            Err(_) => false,
        }
    }

    /// The catch-up instant and place; requires `r < 1`.
    pub fn catch_up(&self) -> Result<CatchUp> {
        self.require_convergent()?;
        let remaining = Rational::one() - &self.ratio;
        Ok(CatchUp {
            time: self.first_step_time() / &remaining,
            position: &self.head_start / &remaining,
        })
    }

    /// Positions of both runners at time `t >= 0`.
    pub fn position_at(&self, t: &Rational) -> Result<Positions> {
        if t.is_negative() {
            return Err(Error::invalid("time must be non-negative"));
        }
        Ok(Positions {
            achilles: &self.achilles_speed * t,
            tortoise: &self.head_start + &(&self.tortoise_speed * t),
        })
    }

    /// The tortoise's lead when step `n` ends: `x0 * r^(n+1)`.
    pub fn gap_at_step(&self, n: u32) -> Result<Rational> {
        self.require_convergent()?;
        Ok(&self.head_start * &self.ratio.pow(n + 1))
    }

    /// Time still to run after step `n`: `(x0 / sA) * r^(n+1) / (1 - r)`.
    pub fn residual(&self, n: u32) -> Result<Rational> {
        self.require_convergent()?;
        Ok(self.residual_base() * self.ratio.pow(n))
    }

    /// Residual after step 0.
    fn residual_base(&self) -> Rational {
        self.first_step_time() * &self.ratio / (Rational::one() - &self.ratio)
    }

    /// Smallest `n` with residual strictly below `eps`.
    ///
    /// Exponential then binary search over exact comparisons; the residual is
    /// strictly decreasing in `n` for `0 < r < 1`.
    pub fn steps_to_within(&self, eps: &Rational) -> Result<u32> {
        self.require_convergent()?;
        if self.tortoise_speed.is_zero() {
            return Err(Error::invalid(
                "stationary tortoise: the residual vanishes from step 0",
            ));
        }
        if !eps.is_positive() {
            return Err(Error::invalid("eps must be positive"));
        }
        let base = self.residual_base();
        let within = |n: u32| &base * &self.ratio.pow(n) < *eps;
        if within(0) {
            return Ok(0);
        }
        // invariant: !within(lo) && within(hi)
        let mut lo = 0u32;
        let mut hi = 1u32;
        while !within(hi) {
            lo = hi;
            hi = hi.checked_mul(2).ok_or(Error::ResourceLimit {
                requested: usize::MAX,
                limit: u32::MAX as usize,
            })?;
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if within(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(hi)
    }
}
