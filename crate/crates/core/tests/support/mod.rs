#![allow(dead_code)]

pub mod lp_vertex_enum;
