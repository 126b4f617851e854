(* expect: (ax) *)
Check Type0 : Type0.
