//! The bundled stub library.
//!
//! Stub classes carry signatures only; bodies are omitted and marked
//! `native`, and the interpreter binds them by qualified name. The same
//! files ship in the `stubs/` directory and can be overridden with
//! `--stubs <dir>`.

/// (file name, source text) of every bundled stub file.
pub const BUILTIN_STUBS: &[(&str, &str)] = &[
    ("object.mj", include_str!("../../stubs/object.mj")),
    ("wrappers.mj", include_str!("../../stubs/wrappers.mj")),
    ("biginteger.mj", include_str!("../../stubs/biginteger.mj")),
    ("collections.mj", include_str!("../../stubs/collections.mj")),
    ("io.mj", include_str!("../../stubs/io.mj")),
];
