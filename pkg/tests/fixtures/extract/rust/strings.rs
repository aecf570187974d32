/// Raw strings may contain braces.
pub fn template() -> &'static str {
    r#"fn fake() { never parsed }"#
}

pub fn lifetimes<'a>(s: &'a str) -> &'a str {
    let c = 'x';
    if s.starts_with(c) { &s[1..] } else { s }
}

/* Block doc for the closer. */
fn closer(v: Vec<u8>) -> usize {
    let f = |x: u8| -> usize { x as usize };
    v.into_iter().map(f).sum()
}
