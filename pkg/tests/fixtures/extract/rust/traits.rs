pub trait My {
    /// Required with default body.
    fn describe(&self) -> String {
        String::from("my")
    }

    fn tag(&self) -> u8;
}

pub mod inner {
    /// Helper inside a module.
    pub fn helper() -> bool {
        true
    }
}
