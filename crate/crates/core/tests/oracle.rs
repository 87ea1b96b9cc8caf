//! Exhaustive search over procedures whose cells are the non-empty maximal
//! simplices, all with the same alphabet of size at most |L|.

use commplex::decide::{decide_generates, DecideOptions};
use commplex::enumerate::enumerate_complexes;
use commplex::{verify_generates, Alphabet, Language, Letter, Procedure, SimplicialComplex, Word};

fn brute_force(l: &Language, k: &SimplicialComplex) -> bool {
    let cells: Vec<u32> = k.maximal().iter().copied().filter(|&m| m != 0).collect();
    let n = l.n();
    let letters = l.alphabet().size();
    let windows: Vec<Vec<usize>> =
        (0..n).map(|i| (0..cells.len()).filter(|&c| cells[c] >> i & 1 == 1).collect()).collect();
    for b in 1..=l.len() {
        let table: Vec<usize> = windows.iter().map(|w| b.pow(w.len() as u32)).collect();
        let counts: Vec<usize> = table.iter().map(|&t| letters.pow(t as u32)).collect();
        let mut choice = vec![0usize; n];
        loop {
            let rules: Vec<Vec<Letter>> = (0..n)
                .map(|i| (0..table[i]).map(|e| (choice[i] / letters.pow(e as u32) % letters) as Letter).collect())
                .collect();
            let p = Procedure::new(vec![b; cells.len()], l.alphabet().clone(), windows.clone(), rules).unwrap();
            if verify_generates(&p, l, k).unwrap() {
                return true;
            }
            let mut i = 0;
            loop {
                if i == n {
                    break;
                }
                choice[i] += 1;
                if choice[i] < counts[i] {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
    }
    false
}

fn languages(n: usize, k: usize, max: usize) -> Vec<Language> {
    let total = k.pow(n as u32);
    let all: Vec<Word> = (0..total).map(|x| (0..n).map(|i| (x / k.pow(i as u32) % k) as Letter).collect()).collect();
    (1u32..1 << total)
        .filter(|s| s.count_ones() as usize <= max)
        .map(|s| {
            let words = (0..total).filter(|&w| s >> w & 1 == 1).map(|w| all[w].clone());
            Language::new(n, Alphabet::new(k).unwrap(), words).unwrap()
        })
        .collect()
}

fn compare(n: usize, k: usize, max: usize) {
    let complexes = enumerate_complexes(n).unwrap();
    for l in languages(n, k, max) {
        for c in &complexes {
            let r = decide_generates(&l, c, &DecideOptions::default()).unwrap();
            assert_eq!(r.generates(), brute_force(&l, c), "{l} on {}", c.compact());
        }
    }
}

#[test]
fn two_positions_binary() {
    compare(2, 2, 4);
}

#[test]
fn two_positions_ternary() {
    compare(2, 3, 3);
}

#[test]
fn three_positions_binary_small() {
    compare(3, 2, 2);
}
