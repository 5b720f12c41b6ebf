pub mod bitlinalg;
pub mod facm;
pub mod families;
pub mod security;
pub mod verify;
