//! Batch-compilation throughput: sequential vs data-parallel unit processing.

fn main() {}
