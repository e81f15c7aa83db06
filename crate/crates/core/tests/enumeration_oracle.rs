//! Enumeration agrees with naive validation of every set partition.

use sct_core::enumerate::enumerate_all;
use sct_core::theory::structure_constants;
use sct_core::Partition;

/// All set partitions of `{1, ..., n-1}` joined with the singleton `{0}`,
/// generated as restricted growth strings.
fn partitions_with_identity(n: u32) -> Vec<Partition> {
    let m = (n - 1) as usize;
    let mut out = Vec::new();
    let mut rgs = vec![0u32; m];
    loop {
        let mut labels = vec![0u32];
        labels.extend(rgs.iter().map(|&r| r + 1));
        out.push(Partition::from_labels(n, &labels).unwrap());
        // next restricted growth string
        let mut i = m;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            let max_prefix = rgs[..i].iter().copied().max().map_or(0, |x| x + 1);
            if rgs[i] < max_prefix {
                rgs[i] += 1;
                for r in &mut rgs[i + 1..] {
                    *r = 0;
                }
                break;
            }
        }
    }
}

fn naive(n: u32) -> Vec<Partition> {
    let mut out: Vec<Partition> = partitions_with_identity(n)
        .into_iter()
        .filter(|p| structure_constants(p).is_ok())
        .collect();
    out.sort_by(|a, b| {
        b.num_blocks()
            .cmp(&a.num_blocks())
            .then_with(|| a.blocks().cmp(b.blocks()))
    });
    out
}

#[test]
fn bell_numbers() {
    let bell = [1usize, 1, 2, 5, 15, 52, 203, 877, 4140, 21147];
    for n in 1..=10u32 {
        assert_eq!(partitions_with_identity(n).len(), bell[n as usize - 1]);
    }
}

#[test]
fn matches_naive_oracle_up_to_10() {
    for n in 1..=10u32 {
        let fast: Vec<Partition> = enumerate_all(n, None)
            .unwrap()
            .theories()
            .iter()
            .map(|t| t.superclasses().clone())
            .collect();
        assert_eq!(fast, naive(n), "n = {n}");
    }
}

#[test]
fn matches_naive_oracle_11_and_12() {
    for n in [11u32, 12] {
        let fast: Vec<Partition> = enumerate_all(n, None)
            .unwrap()
            .theories()
            .iter()
            .map(|t| t.superclasses().clone())
            .collect();
        assert_eq!(fast, naive(n), "n = {n}");
    }
}
