use std::sync::Arc;

use permrex::Regex;
use proptest::prelude::*;

fn leaf(max_sym: u32, literals: bool) -> BoxedStrategy<Arc<Regex>> {
    let sym = (1..=max_sym).prop_map(Regex::sym);
    if literals {
        prop_oneof![
            8 => sym,
            1 => Just(Arc::new(Regex::Epsilon)),
            1 => Just(Arc::new(Regex::EmptySet)),
        ]
        .boxed()
    } else {
        sym.boxed()
    }
}

pub fn ast(
    max_sym: u32,
    literals: bool,
    depth: u32,
    size: u32,
) -> impl Strategy<Value = Arc<Regex>> {
    leaf(max_sym, literals).prop_recursive(depth, size, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Regex::union(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Regex::concat(a, b)),
            inner.prop_map(Regex::star),
        ]
    })
}
