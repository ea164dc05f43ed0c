"""Line arrangements over finite and number fields."""
