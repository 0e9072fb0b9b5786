# Normal forms for SAR atoms.
