use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("element {0} does not belong to the group")]
    InvalidElement(String),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group order {order} exceeds the configured cap {cap}")]
    CapExceeded { order: u128, cap: u64 },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T, E = GroupError> = std::result::Result<T, E>;
