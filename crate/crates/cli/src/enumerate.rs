use itertools::Itertools;
use spectile::TileSet;

use crate::error::CliError;

/// All `A ⊂ {0, ..., m-1}` with `0 ∈ A` and `#A = n`, in lexicographic order.
/// There are `C(m-1, n-1)` of them.
pub fn enumerate_sets(n: usize, m: u64) -> Result<impl Iterator<Item = TileSet>, CliError> {
    if n == 0 || n as u64 > m {
        return Err(CliError::BadEnumeration { n, m });
    }
    Ok((1..m).combinations(n - 1).map(move |rest| {
        let mut e = Vec::with_capacity(n);
        e.push(0);
        e.extend(rest);
        TileSet::new(e).expect("combinations are strictly increasing")
    }))
}
