#![allow(dead_code)]

use gammaspec_core::{GammaModule, TernarySemiring};
use gammaspec_testkit::{RawModule, RawSemiring};

pub fn raw(t: &TernarySemiring) -> RawSemiring {
    RawSemiring {
        add: t.add_table(),
        tern: t.ternary_tables(),
    }
}

pub fn raw_module(m: &GammaModule) -> RawModule {
    let t = m.parent();
    let (n, s) = (t.size(), m.size());
    RawModule {
        add: (0..s)
            .map(|x| (0..s).map(|y| m.add(x, y)).collect())
            .collect(),
        act: (0..t.gamma_count())
            .map(|g| {
                (0..n)
                    .map(|a| {
                        (0..s)
                            .map(|x| (0..n).map(|b| m.act(a, x, b, g)).collect())
                            .collect()
                    })
                    .collect()
            })
            .collect(),
    }
}
