use super::LatticeCode;

/// The 240 roots of E8 in doubled even coordinates.
///
/// Shape `(+-1, +-1, 0^6)` becomes `(+-2, +-2, 0^6)` and `(+-1/2)^8` with an
/// even number of minus signs becomes `(+-1)^8`; every point has squared
/// norm 8. Points are sorted lexicographically.
pub fn generate_e8_roots() -> LatticeCode {
    let mut points = Vec::with_capacity(240);

    for i in 0..8 {
        for j in (i + 1)..8 {
            for signs in 0..4u8 {
                let mut v = vec![0i64; 8];
                v[i] = if signs & 1 == 0 { 2 } else { -2 };
                v[j] = if signs & 2 == 0 { 2 } else { -2 };
                points.push(v);
            }
        }
    }

    for mask in 0u16..256 {
        if mask.count_ones() % 2 == 0 {
            points.push(
                (0..8)
                    .map(|b| if mask >> b & 1 == 0 { 1 } else { -1 })
                    .collect(),
            );
        }
    }

    points.sort();
    LatticeCode::new(8, 2, points).expect("E8 roots are distinct and equinorm")
}
