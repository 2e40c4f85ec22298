use super::{partitions_of, residue, Partition};
use crate::error::{Error, Result};

/// Torus fixed points of the quiver variety with dimension vectors `v`, `w`:
/// tuples of partitions `λ^(i,j)` (`i < l`, `j < w_i`, listed `i`-major) whose
/// boxes, with contents shifted by `i`, hit residue `r` exactly `v_r` times.
pub fn fixed_points(v: &[usize], w: &[usize], l: usize) -> Result<Vec<Vec<Partition>>> {
    if l == 0 {
        return Err(Error::InvalidModulus(l));
    }
    if v.len() != l {
        return Err(Error::ModulusMismatch(v.len(), l));
    }
    if w.len() != l {
        return Err(Error::ModulusMismatch(w.len(), l));
    }
    let shifts: Vec<usize> = (0..l)
        .flat_map(|i| std::iter::repeat(i).take(w[i]))
        .collect();
    let total: usize = v.iter().sum();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(shifts.len());
    let mut counts = vec![0usize; l];
    search(&shifts, total, v, l, &mut cur, &mut counts, &mut out);
    Ok(out)
}

fn search(
    shifts: &[usize],
    remaining: usize,
    v: &[usize],
    l: usize,
    cur: &mut Vec<Partition>,
    counts: &mut [usize],
    out: &mut Vec<Vec<Partition>>,
) {
    let slot = cur.len();
    if slot == shifts.len() {
        if remaining == 0 && counts == v {
            out.push(cur.clone());
        }
        return;
    }
    let sizes: Box<dyn Iterator<Item = usize>> = if slot + 1 == shifts.len() {
        Box::new(std::iter::once(remaining))
    } else {
        Box::new(0..=remaining)
    };
    for s in sizes {
        for p in partitions_of(s) {
            let mut ok = true;
            for (a, b) in p.boxes() {
                let r = residue(a as i64 - b as i64 + shifts[slot] as i64, l);
                counts[r] += 1;
                ok &= counts[r] <= v[r];
            }
            if ok {
                cur.push(p.clone());
                search(shifts, remaining - s, v, l, cur, counts, out);
                cur.pop();
            }
            for (a, b) in p.boxes() {
                counts[residue(a as i64 - b as i64 + shifts[slot] as i64, l)] -= 1;
            }
        }
    }
}
