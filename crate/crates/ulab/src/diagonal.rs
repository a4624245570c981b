//! Diagonalization engine (under construction).
