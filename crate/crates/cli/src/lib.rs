//! Command implementations and the serialized output record for `ppz`.

pub mod commands;
pub mod record;
pub mod render;
