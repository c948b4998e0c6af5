use dwm::construct::{base_pair, embedded_dw, DwCollection, Embedded};
use dwm::scheme::{build_relations, sylvester_hadamard, SchemeParams, SchemeRelations};

pub fn dw_for(k: usize, m: usize) -> DwCollection {
    match (k, m) {
        (1, 1) => DwCollection::certify(vec![base_pair().1], vec![1]).unwrap(),
        (3, 9) => embedded_dw(Embedded::Dw28),
        (3, 17) => embedded_dw(Embedded::Dw52),
        _ => unreachable!(),
    }
}

pub fn scheme(k: usize, m: usize, l: usize) -> SchemeRelations {
    let params = SchemeParams::new(k, m, l, dw_for(k, m), sylvester_hadamard(k * l + 1).unwrap()).unwrap();
    build_relations(&params).unwrap()
}

/// `p_{ij}^k` by counting common neighbours at every pair in relation `k`.
pub fn brute_force_tensor(rel: &SchemeRelations) -> Vec<Vec<Vec<i64>>> {
    let rs = rel.relations();
    let n = rel.vertices();
    let d = rs.len() - 1;
    let label: Vec<usize> =
        (0..n * n).map(|x| rs.iter().position(|a| a.get(x / n, x % n) == 1).expect("partition")).collect();
    let mut p = vec![vec![vec![None::<i64>; d + 1]; d + 1]; d + 1];
    let mut counts = vec![vec![0i64; d + 1]; d + 1];
    for x in 0..n {
        for y in 0..n {
            for row in counts.iter_mut() {
                row.iter_mut().for_each(|c| *c = 0);
            }
            for z in 0..n {
                counts[label[x * n + z]][label[z * n + y]] += 1;
            }
            let k = label[x * n + y];
            for i in 0..=d {
                for j in 0..=d {
                    let slot = &mut p[i][j][k];
                    match slot {
                        None => *slot = Some(counts[i][j]),
                        Some(v) => assert_eq!(*v, counts[i][j], "p_{i}{j}^{k} not constant at ({x},{y})"),
                    }
                }
            }
        }
    }
    p.into_iter().map(|a| a.into_iter().map(|b| b.into_iter().map(|c| c.unwrap()).collect()).collect()).collect()
}

