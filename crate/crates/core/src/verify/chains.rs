use super::{Report, ViolationKind};
use crate::chains::ChainPartition;

/// Disjoint cover of `2^[n]`, inclusion order along each chain, and the size
/// contract: `|C_1|` in `[h, 2h)`, every other chain of size exactly `h`.
pub fn verify_chain_partition(cp: &ChainPartition) -> Report {
    let n = cp.host_n();
    let h = cp.h();
    let mut report = Report {
        tiles: cp.len(),
        ..Report::default()
    };
    let mut owner = vec![u32::MAX; 1 << n];
    for (id, chain) in cp.chains().iter().enumerate() {
        for &x in chain {
            match owner.get_mut(x as usize) {
                None => report.flag(ViolationKind::OutOfRange, format!("{x:#x} in chain {id}")),
                Some(o) if *o != u32::MAX => {
                    report.flag(ViolationKind::Overlap, format!("{x:#x} in chains {} and {id}", *o))
                }
                Some(o) => *o = id as u32,
            }
        }
        if let Some(w) = chain.windows(2).find(|w| w[0] & !w[1] != 0 || w[0] == w[1]) {
            report.flag(
                ViolationKind::NotAChain,
                format!("chain {id}: {:#x} is not below {:#x}", w[0], w[1]),
            );
        }
    }
    let missing = owner.iter().filter(|&&o| o == u32::MAX).count();
    if let Some(x) = owner.iter().position(|&o| o == u32::MAX) {
        report.flag(ViolationKind::Uncovered, format!("{missing} sets, first {x:#x}"));
    }

    if h == 0 {
        report.flag(ViolationKind::SizeContract, "h must be at least 1");
        return report;
    }
    match cp.chains().first() {
        None => report.flag(ViolationKind::SizeContract, "no chains"),
        Some(c) if c.len() < h || c.len() >= 2 * h => report.flag(
            ViolationKind::SizeContract,
            format!("first chain has size {}, outside [{h}, {})", c.len(), 2 * h),
        ),
        Some(_) => {}
    }
    if let Some((id, c)) = cp.chains().iter().enumerate().skip(1).find(|(_, c)| c.len() != h) {
        report.flag(
            ViolationKind::SizeContract,
            format!("chain {id} has size {}, expected {h}", c.len()),
        );
    }
    report
}
