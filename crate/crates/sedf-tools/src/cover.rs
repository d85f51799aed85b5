//! Exact-cover search over a 0/1 matrix with at most 128 rows, used to find
//! the column subsets that sum to the all-ones vector.

/// A column available for selection: caller-assigned label plus the bitmask
/// of rows it covers.
#[derive(Debug, Clone, Copy)]
pub struct CoverColumn {
    pub label: u64,
    pub rows: u128,
}

/// All subsets of `cols` whose row masks are disjoint and union to
/// `full_mask`. Each solution is a sorted list of column labels. The search
/// branches on the uncovered row with the fewest remaining candidate columns.
pub fn exact_covers(cols: &[CoverColumn], full_mask: u128) -> Vec<Vec<u64>> {
    let mut solutions = Vec::new();
    let mut chosen = Vec::new();
    search(cols, full_mask, 0, &mut chosen, &mut solutions);
    solutions
}

fn search(
    cols: &[CoverColumn],
    full_mask: u128,
    covered: u128,
    chosen: &mut Vec<u64>,
    solutions: &mut Vec<Vec<u64>>,
) {
    if covered == full_mask {
        let mut sol = chosen.clone();
        sol.sort_unstable();
        solutions.push(sol);
        return;
    }
    let uncovered = full_mask & !covered;
    // row with the fewest usable columns
    let mut best_row = 0u32;
    let mut best_count = usize::MAX;
    let mut rest = uncovered;
    while rest != 0 {
        let row = rest.trailing_zeros();
        rest &= rest - 1;
        let bit = 1u128 << row;
        let count = cols
            .iter()
            .filter(|c| c.rows & bit != 0 && c.rows & covered == 0)
            .count();
        if count < best_count {
            best_count = count;
            best_row = row;
            if count == 0 {
                return;
            }
        }
    }
    let bit = 1u128 << best_row;
    for c in cols {
        if c.rows & bit != 0 && c.rows & covered == 0 {
            chosen.push(c.label);
            search(cols, full_mask, covered | c.rows, chosen, solutions);
            chosen.pop();
        }
    }
}
