/// All elementary symmetric polynomials `e_0 ..= e_n` of `values`.
///
/// Uses the recurrence `e_k(x_1..x_m) = e_k(x_1..x_{m-1}) + x_m e_{k-1}(x_1..x_{m-1})`,
/// which only adds products of inputs and never divides.
pub fn elementary_symmetric_all(values: &[f64]) -> Vec<f64> {
    let mut e = vec![0.0; values.len() + 1];
    e[0] = 1.0;
    for (m, &x) in values.iter().enumerate() {
        for k in (1..=m + 1).rev() {
            e[k] += x * e[k - 1];
        }
    }
    e
}

/// The elementary symmetric polynomial `e_k` of `values`; zero for `k > n`.
pub fn elementary_symmetric(values: &[f64], k: usize) -> f64 {
    if k > values.len() {
        return 0.0;
    }
    elementary_symmetric_all(values)[k]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_values() {
        assert_eq!(elementary_symmetric(&[4.0, 1.0], 1), 5.0);
        assert_eq!(elementary_symmetric(&[4.0, 1.0], 2), 4.0);
        assert_eq!(elementary_symmetric(&[4.0, 1.0], 0), 1.0);
        assert_eq!(elementary_symmetric(&[], 0), 1.0);
        assert_eq!(elementary_symmetric(&[3.0], 2), 0.0);
    }

    #[test]
    fn three_values_by_hand() {
        let e = elementary_symmetric_all(&[1.0, 2.0, 3.0]);
        assert_eq!(e, vec![1.0, 6.0, 11.0, 6.0]);
    }
}
