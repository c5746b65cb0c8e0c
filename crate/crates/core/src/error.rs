use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("operator is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("steady state is not unique: kernel gap ratio {ratio:e} (estimated kernel dimension {kernel_dim})")]
    DegenerateKernel { ratio: f64, kernel_dim: usize },

    #[error("solver failed to converge: {0}")]
    NoConvergence(String),

    #[error("integration step size underflow at t = {0}")]
    StepUnderflow(f64),

    #[error("singular resolvent at detuning {0} meV")]
    SingularResolvent(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
