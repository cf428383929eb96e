"nntensor: spectral radius of nonnegative tensors by row-sum smoothing."

# nntensor version: should be consistent with README
VERSION = "1.0.0"
