namespace pfrad {}
