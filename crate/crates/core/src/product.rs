/// Odometer over the Cartesian product of index lists, last factor fastest.
///
/// An empty list of factors yields exactly one empty tuple; any empty factor
/// yields nothing.
#[derive(Debug, Clone)]
pub struct CartesianProduct {
    factors: Vec<Vec<usize>>,
    cursor: Vec<usize>,
    done: bool,
}

impl CartesianProduct {
    pub fn new(factors: Vec<Vec<usize>>) -> Self {
        let done = factors.iter().any(Vec::is_empty);
        let cursor = vec![0; factors.len()];
        CartesianProduct {
            factors,
            cursor,
            done,
        }
    }

    /// Number of tuples the iterator yields in total.
    pub fn len_total(&self) -> usize {
        self.factors.iter().map(Vec::len).product()
    }
}

impl Iterator for CartesianProduct {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let item = self
            .cursor
            .iter()
            .zip(&self.factors)
            .map(|(&c, f)| f[c])
            .collect();
        // advance
        let mut k = self.factors.len();
        loop {
            if k == 0 {
                self.done = true;
                break;
            }
            k -= 1;
            self.cursor[k] += 1;
            if self.cursor[k] < self.factors[k].len() {
                break;
            }
            self.cursor[k] = 0;
        }
        Some(item)
    }
}
