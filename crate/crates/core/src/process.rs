//! Geometric event processes: event `k` ends after `k + 1` intervals whose
//! lengths shrink by a constant ratio. The race, the halving-distance runner
//! and the bouncing ball are all instances.

use crate::error::{Error, Result};
use crate::race::{RaceConfig, StepEvent, MAX_STEPS};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeometricEventProcess {
    first_interval: Rational,
    ratio: Rational,
}

impl GeometricEventProcess {
    /// Requires `first_interval > 0` and `ratio >= 0`.
    pub fn new(first_interval: Rational, ratio: Rational) -> Result<Self> {
        if !first_interval.is_positive() {
            return Err(Error::invalid("first interval must be positive"));
        }
        if ratio.is_negative() {
            return Err(Error::invalid("ratio must be non-negative"));
        }
        Ok(GeometricEventProcess {
            first_interval,
            ratio,
        })
    }

    pub fn first_interval(&self) -> &Rational {
        &self.first_interval
    }

    pub fn ratio(&self) -> &Rational {
        &self.ratio
    }

    /// Closed-form time of event `k`; undefined for `ratio = 1`.
    pub fn event_time(&self, k: u32) -> Result<Rational> {
        let one = Rational::one();
        if self.ratio == one {
            return Err(Error::DegenerateRatio);
        }
        let exponent = k.checked_add(1).ok_or_else(|| Error::invalid("event index too large"))?;
        Ok(&self.first_interval * &(&one - &self.ratio.pow(exponent)) / (&one - &self.ratio))
    }

    /// Event times `0..count` by running addition. Defined for every ratio.
    pub fn event_times(&self, count: usize) -> Result<Vec<Rational>> {
        if count > MAX_STEPS {
            return Err(Error::ResourceLimit {
                requested: count,
                limit: MAX_STEPS,
            });
        }
        let mut times = Vec::with_capacity(count);
        let mut interval = self.first_interval.clone();
        let mut time = Rational::zero();
        for _ in 0..count {
            time = &time + &interval;
            interval = &interval * &self.ratio;
            times.push(time.clone());
        }
        Ok(times)
    }

    /// The supremum of all event times, `first_interval / (1 - ratio)`.
    pub fn accumulation_point(&self) -> Result<Rational> {
        if self.ratio >= Rational::one() {
            return Err(Error::NoAccumulation);
        }
        Ok(&self.first_interval / &(Rational::one() - &self.ratio))
    }
}

impl RaceConfig {
    /// The step times as an event process: the first step lasts `x0 / sA` and
    /// every later step is `r` times the previous one.
    pub fn as_process(&self) -> Result<GeometricEventProcess> {
        if !self.is_convergent() {
            return Err(Error::NoCatchUp);
        }
        GeometricEventProcess::new(self.first_step_time(), self.ratio().clone())
    }
}

/// A runner covering half of the remaining track, over and over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DichotomyConfig {
    length: Rational,
    speed: Rational,
}

impl DichotomyConfig {
    pub fn new(length: Rational, speed: Rational) -> Result<Self> {
        if !length.is_positive() {
            return Err(Error::invalid("track length must be positive"));
        }
        if !speed.is_positive() {
            return Err(Error::invalid("runner speed must be positive"));
        }
        Ok(DichotomyConfig { length, speed })
    }

    pub fn length(&self) -> &Rational {
        &self.length
    }

    pub fn speed(&self) -> &Rational {
        &self.speed
    }

    /// Event `n` is at `d_n = length * (1 - (1/2)^(n+1))`, reached at `d_n / speed`.
    pub fn sequence(&self, count: usize) -> Result<Vec<StepEvent>> {
        if count == 0 {
            return Err(Error::invalid("step count must be at least 1"));
        }
        if count > MAX_STEPS {
            return Err(Error::ResourceLimit {
                requested: count,
                limit: MAX_STEPS,
            });
        }
        let half = Rational::new(1, 2)?;
        let mut remaining = &self.length * &half;
        let mut events = Vec::with_capacity(count);
        for n in 0..count as u32 {
            let position = &self.length - &remaining;
            let time = &position / &self.speed;
            events.push(StepEvent { n, time, position });
            remaining = &remaining * &half;
        }
        Ok(events)
    }

    /// First interval `length / (2 * speed)`, ratio 1/2.
    pub fn process(&self) -> GeometricEventProcess {
        GeometricEventProcess {
            first_interval: &self.length / &(&self.speed * &Rational::from(2)),
            ratio: Rational::new(1, 2).expect("nonzero"),
        }
    }

    /// Total time to cover the whole track, `length / speed`.
    pub fn total_time(&self) -> Rational {
        self.process()
            .accumulation_point()
            .expect("halving process converges")
    }
}

/// A ball whose successive flights between bounces shrink by `time_ratio`.
///
/// With coefficient of restitution `c`, each rebound speed is `c` times the
/// previous one and so is each flight time, so `time_ratio = c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BounceConfig {
    first_flight: Rational,
    time_ratio: Rational,
}

impl BounceConfig {
    /// Requires `first_flight > 0` and `0 <= time_ratio < 1`.
    pub fn new(first_flight: Rational, time_ratio: Rational) -> Result<Self> {
        if !first_flight.is_positive() {
            return Err(Error::invalid("first flight time must be positive"));
        }
        if time_ratio.is_negative() || time_ratio >= Rational::one() {
            return Err(Error::invalid("time ratio must lie in [0, 1)"));
        }
        Ok(BounceConfig {
            first_flight,
            time_ratio,
        })
    }

    pub fn process(&self) -> GeometricEventProcess {
        GeometricEventProcess {
            first_interval: self.first_flight.clone(),
            ratio: self.time_ratio.clone(),
        }
    }

    /// The instant the ball comes to rest after infinitely many bounces.
    pub fn rest_time(&self) -> Rational {
        self.process()
            .accumulation_point()
            .expect("time ratio below 1")
    }
}
