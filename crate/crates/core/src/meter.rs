/// Work and round counters for the batch-parallel execution model.
///
/// `work_units` counts elementary operations, `rounds` counts batch phases
/// on the critical path. Both only grow. Meters of concurrently executed
/// branches are combined with [`WorkDepthMeter::join_parallel`]: work adds
/// up, rounds take the maximum.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct WorkDepthMeter {
    work_units: u64,
    rounds: u64,
    state_changes: u64,
}

impl WorkDepthMeter {
    pub const fn new() -> Self {
        Self { work_units: 0, rounds: 0, state_changes: 0 }
    }

    pub fn work_units(&self) -> u64 {
        self.work_units
    }

    pub fn rounds(&self) -> u64 {
        self.rounds
    }

    /// Vertex/edge state transitions recorded by the path matcher.
    pub fn state_changes(&self) -> u64 {
        self.state_changes
    }

    #[inline]
    pub fn work(&mut self, units: u64) {
        self.work_units += units;
    }

    /// One batch phase touching `units` items.
    #[inline]
    pub fn round(&mut self, units: u64) {
        self.rounds += 1;
        self.work_units += units.max(1);
    }

    #[inline]
    pub fn rounds_add(&mut self, rounds: u64) {
        self.rounds += rounds;
    }

    #[inline]
    pub fn record_state_changes(&mut self, count: u64) {
        self.state_changes += count;
    }

    /// Append a meter that ran after this one.
    pub fn then(&mut self, other: &WorkDepthMeter) {
        self.work_units += other.work_units;
        self.rounds += other.rounds;
        self.state_changes += other.state_changes;
    }

    /// Append the combined cost of branches that ran side by side.
    pub fn join_parallel<'a, I>(&mut self, branches: I)
    where
        I: IntoIterator<Item = &'a WorkDepthMeter>,
    {
        let mut deepest = 0;
        for b in branches {
            self.work_units += b.work_units;
            self.state_changes += b.state_changes;
            deepest = deepest.max(b.rounds);
        }
        self.rounds += deepest;
    }
}

/// `ceil(log2(n))`, at least 1. Round charge of a pointer-jumping pass.
#[inline]
pub(crate) fn log_rounds(n: usize) -> u64 {
    if n <= 2 {
        1
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_join_takes_max_rounds() {
        let mut a = WorkDepthMeter::new();
        a.round(10);
        a.round(10);
        let mut b = WorkDepthMeter::new();
        b.round(5);
        let mut total = WorkDepthMeter::new();
        total.join_parallel([&a, &b]);
        assert_eq!(total.rounds(), 2);
        assert_eq!(total.work_units(), 25);
    }

    #[test]
    fn log_rounds_small() {
        assert_eq!(log_rounds(0), 1);
        assert_eq!(log_rounds(2), 1);
        assert_eq!(log_rounds(3), 2);
        assert_eq!(log_rounds(1024), 10);
        assert_eq!(log_rounds(1025), 11);
    }
}
