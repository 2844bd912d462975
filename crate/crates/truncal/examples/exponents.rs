//! Monomial order, grids and their enumeration above a cutoff.

use truncal::exponents::{enumerate_grid, Basis, GridDescriptor, Monomial, PlainMonomial};

fn main() {
    let basis = Basis::new(&["t", "u"]);
    let m = |a: i64, b: i64| PlainMonomial::from_ints(&basis, &[a, b]);

    // Lexicographic: t dominates u.
    println!("{} ≺ {}: {}", m(1, -5), m(0, 1), m(1, -5) < m(0, 1));

    let grid = GridDescriptor::new(m(-1, 0), vec![m(1, 0), m(1, -1)]).unwrap();
    let members = enumerate_grid(&grid, &m(1, -2)).unwrap();
    println!("{} members above {}:", members.len(), m(1, -2));
    for g in members {
        println!("  {g}");
    }
    println!("t^2·u^-1 in grid: {}", grid.contains(&m(1, -1).mul(&m(1, 0))).unwrap());
}
