#![no_std]
extern crate alloc;

pub mod biliaison;
pub mod height;
pub mod ideal;
pub mod ladder;
pub mod poly;
