namespace Fx.Biz
{
    public class Loops
    {
        public void Idle()
        {
        }

        public void Spin()
        {
            this.Spin();
        }

        public void A()
        {
            this.B();
        }

        public void B()
        {
            this.A();
        }

        public void R1() { this.R2(); }
        public void R2() { this.R3(); }
        public void R3() { this.R4(); }
        public void R4() { this.R5(); }
        public void R5() { this.R1(); }
    }
}
