use crate::error::{check_dim, Error, Result};
use crate::scalar::Scalar;

/// Mean Euclidean distance from each row to `g_best`.
pub fn diversity<T: Scalar>(positions: &[Vec<T>], g_best: &[T]) -> Result<T> {
    if positions.is_empty() {
        return Err(Error::input("diversity of an empty population"));
    }
    let mut total = T::zero();
    for row in positions {
        check_dim(g_best.len(), row.len())?;
        total = total + distance(row, g_best);
    }
    Ok(total / T::of(positions.len() as f64))
}

fn distance<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| (x - y) * (x - y)).sum::<T>().sqrt()
}
